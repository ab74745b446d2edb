//! Command-line front end for the b-divisor verification library:
//! argument/config handling, report types, JSON/CSV serialization, the
//! per-subcommand check sets, and the consolidated acceptance runner.

pub mod acceptance;
pub mod commands;
pub mod config;
pub mod model_json;
pub mod report;

pub use config::{Format, RunConfig};
pub use report::Report;

/// JSON schema tag carried by every emitted report document.
pub const SCHEMA: &str = "bdivisor-report/1";

/// Environment variable bounding the worker count for parallel checks.
pub const WORKERS_ENV: &str = "BDIVISOR_WORKERS";

/// Worker budget: `BDIVISOR_WORKERS` if set and valid, else the available
/// parallelism, else 1.
pub fn worker_budget() -> usize {
    if let Ok(v) = std::env::var(WORKERS_ENV) {
        if let Ok(n) = v.parse::<usize>() {
            if n >= 1 {
                return n;
            }
        }
    }
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}
