//! The report record every check produces, and its JSON/CSV renderings.

use bdivisor_core::rat::{decimal_string, ratio_string, Rat};
use serde_json::{json, Value};

use crate::SCHEMA;

/// One verification result. `target`, `computed` and `bound` are strings:
/// canonical "p/q" for exact values (bound "0" for exact checks), decimal
/// otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub check_name: String,
    pub target: String,
    pub computed: String,
    pub bound: String,
    pub pass: bool,
    pub runtime_ms: u128,
}

impl Report {
    /// Exact rational comparison; bound is "0".
    pub fn exact(name: &str, target: &Rat, computed: &Rat) -> Report {
        Report {
            check_name: name.to_string(),
            target: ratio_string(target),
            computed: ratio_string(computed),
            bound: "0".to_string(),
            pass: target == computed,
            runtime_ms: 0,
        }
    }

    /// Approximate comparison of floats under an absolute bound.
    pub fn approx(name: &str, target: f64, computed: f64, bound: f64) -> Report {
        Report {
            check_name: name.to_string(),
            target: float_string(target),
            computed: float_string(computed),
            bound: float_string(bound),
            pass: (computed - target).abs() <= bound,
            runtime_ms: 0,
        }
    }

    /// A predicate that has already been evaluated; strings are context.
    pub fn claim(name: &str, target: &str, computed: &str, pass: bool) -> Report {
        Report {
            check_name: name.to_string(),
            target: target.to_string(),
            computed: computed.to_string(),
            bound: "0".to_string(),
            pass,
            runtime_ms: 0,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "check_name": self.check_name,
            "target": self.target,
            "computed": self.computed,
            "bound": self.bound,
            "pass": self.pass,
            "runtime_ms": self.runtime_ms,
        })
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.check_name, self.target, self.computed, self.bound, self.pass, self.runtime_ms
        )
    }
}

/// Shortest-round-trip float rendering; deterministic across runs.
pub fn float_string(x: f64) -> String {
    let mut s = format!("{x}");
    if !s.contains('.') && !s.contains('e') && !s.contains("inf") && !s.contains("NaN") {
        s.push_str(".0");
    }
    s
}

/// Decimal rendering of an exact rational at the configured precision.
pub fn rational_decimal(r: &Rat, precision: u32) -> String {
    decimal_string(r, precision as usize)
}

/// Wraps a command's reports in the versioned document envelope.
pub fn document(command: &str, reports: &[Report], payload: Value) -> Value {
    json!({
        "schema": SCHEMA,
        "command": command,
        "pass": reports.iter().all(|r| r.pass),
        "reports": reports.iter().map(Report::to_json).collect::<Vec<_>>(),
        "payload": payload,
    })
}

pub fn reports_csv(reports: &[Report]) -> String {
    let mut out = String::from("check_name,target,computed,bound,pass,runtime_ms\n");
    for r in reports {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    out
}
