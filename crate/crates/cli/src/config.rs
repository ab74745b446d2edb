//! Run configuration shared by all subcommands.

use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Format::Json => write!(f, "json"),
            Format::Csv => write!(f, "csv"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub level: u32,
    pub depth: u32,
    pub window: u32,
    /// ell values for the dimension table; empty means "derive from N".
    pub ell: Vec<u32>,
    pub tol: f64,
    /// The tolerance exactly as given, echoed into reports.
    pub tol_str: String,
    pub precision: u32,
    pub seed: u64,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> RunConfig {
        RunConfig {
            level: 4,
            depth: 6,
            window: 300,
            ell: Vec::new(),
            tol: 1e-9,
            tol_str: "1e-9".to_string(),
            precision: 50,
            seed: 42,
            format: Format::Json,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid configuration: {}", self.0)
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.level < 3 {
            return Err(ConfigError(format!("level N = {} (need N >= 3)", self.level)));
        }
        if self.window < 2 {
            return Err(ConfigError(format!("window = {} (need >= 2)", self.window)));
        }
        if !(self.tol > 0.0) {
            return Err(ConfigError(format!("tolerance '{}' must be positive", self.tol_str)));
        }
        if self.precision < 30 {
            return Err(ConfigError(format!(
                "precision = {} digits (need >= 30)",
                self.precision
            )));
        }
        Ok(())
    }

    /// The ell column of the dimension table: explicit values, or a
    /// doubling ladder of multiples of N (so that N | 4 ell holds).
    pub fn ell_values(&self) -> Vec<u32> {
        if !self.ell.is_empty() {
            return self.ell.clone();
        }
        (0..5).map(|i| self.level << i).collect()
    }
}
