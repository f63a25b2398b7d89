use thiserror::Error;

/// Errors raised by the structural checks throughout the crate.
///
/// Variants carrying a `residual` report the norm of whatever identity
/// failed, so callers can tell a tolerance miss from a gross violation.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is not in the image of the complex embedding (residual {residual:.3e})")]
    NotInImage { residual: f64 },

    #[error("operator is not normal (residual {residual:.3e})")]
    NotNormal { residual: f64 },

    #[error("operator is not anti-selfadjoint (residual {residual:.3e})")]
    NotAntiSelfAdjoint { residual: f64 },

    #[error("structure violation: {what} (residual {residual:.3e})")]
    Structure { what: String, residual: f64 },

    #[error("operators do not commute (residual {residual:.3e})")]
    DoesNotCommute { residual: f64 },

    #[error("invalid basis: {what} (residual {residual:.3e})")]
    Basis { what: String, residual: f64 },

    #[error("operator does not lie in a scalar commutant (residual {residual:.3e})")]
    NotInScalarCommutant { residual: f64 },

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("algebra is not complex-induced (classified as {kind})")]
    NotComplexInduced { kind: String },

    #[error("proposition has zero probability ({probability:.3e})")]
    ZeroProbability { probability: f64 },

    #[error("vector or scalar is not normalized (norm {norm:.15})")]
    Normalization { norm: f64 },
}

impl Error {
    pub(crate) fn structure(what: impl Into<String>, residual: f64) -> Self {
        Error::Structure {
            what: what.into(),
            residual,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
