use serde::{Deserialize, Serialize};

/// One named residual against its tolerance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    /// A NaN residual never passes.
    pub fn new(name: impl Into<String>, residual: f64, tolerance: f64) -> Check {
        Check {
            name: name.into(),
            residual,
            tolerance,
            pass: residual <= tolerance,
        }
    }

    /// Folds `other` into `self`, keeping the larger residual.
    pub fn merge(&mut self, residual: f64) {
        if residual > self.residual || residual.is_nan() {
            self.residual = residual;
        }
        self.pass = self.residual <= self.tolerance;
    }
}

pub fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.pass)
}
