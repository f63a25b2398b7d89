use std::process::ExitCode;

use serde::Serialize;
use serde_json::{Map, Value};

use quatred::{Check, Error};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn exit_code(self) -> ExitCode {
        match self {
            Status::Pass => ExitCode::SUCCESS,
            Status::Fail => ExitCode::from(1),
            Status::Error => ExitCode::from(2),
        }
    }
}

/// Machine-readable outcome of one command.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub checks: Vec<Check>,
    pub artifacts: Map<String, Value>,
}

impl Report {
    /// Status is `pass` iff every check passes. Non-finite residuals are
    /// stored as `f64::MAX` and fail.
    pub fn new(command: &str, checks: Vec<Check>, artifacts: Map<String, Value>) -> Report {
        let checks: Vec<Check> = checks
            .into_iter()
            .map(|c| {
                let r = if c.residual.is_finite() { c.residual.abs() } else { f64::MAX };
                let pass = c.pass && c.residual.is_finite();
                Check { residual: r, pass, ..c }
            })
            .collect();
        let status = if checks.iter().all(|c| c.pass) { Status::Pass } else { Status::Fail };
        Report {
            command: command.to_string(),
            status,
            checks,
            artifacts,
        }
    }

    pub fn error(command: &str, kind: &str, message: impl Into<String>) -> Report {
        let mut artifacts = Map::new();
        artifacts.insert("error".into(), Value::String(kind.to_string()));
        artifacts.insert("message".into(), Value::String(message.into()));
        Report {
            command: command.to_string(),
            status: Status::Error,
            checks: Vec::new(),
            artifacts,
        }
    }

    pub fn failed(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

/// Rescales tolerances by the global multiplier and recomputes `pass`.
pub fn scaled(checks: Vec<Check>, scale: f64) -> Vec<Check> {
    checks
        .into_iter()
        .map(|c| Check::new(c.name, c.residual, c.tolerance * scale))
        .collect()
}

/// Name of the library error variant, used as the report's error kind.
pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Dimension(_) => "Dimension",
        Error::NotInImage { .. } => "NotInImage",
        Error::NotNormal { .. } => "NotNormal",
        Error::NotAntiSelfAdjoint { .. } => "NotAntiSelfAdjoint",
        Error::Structure { .. } => "Structure",
        Error::DoesNotCommute { .. } => "DoesNotCommute",
        Error::Basis { .. } => "Basis",
        Error::NotInScalarCommutant { .. } => "NotInScalarCommutant",
        Error::InternalInconsistency(_) => "InternalInconsistency",
        Error::Precondition(_) => "Precondition",
        Error::NotComplexInduced { .. } => "NotComplexInduced",
        Error::ZeroProbability { .. } => "ZeroProbability",
        Error::Normalization { .. } => "Normalization",
    }
}

impl From<(&str, Error)> for Report {
    fn from((command, e): (&str, Error)) -> Report {
        Report::error(command, error_kind(&e), e.to_string())
    }
}
