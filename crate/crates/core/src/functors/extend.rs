use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::embed::{complexify_real, quaternionify_complex, CMatrix, RMatrix};
use crate::linalg::matrix::QMatrix;
use crate::quat::Frame;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    Complex,
    Quaternion,
}

/// A square matrix over one of the three fields.
#[derive(Debug, Clone, PartialEq)]
pub enum ScalarMatrix {
    Real(RMatrix),
    Complex(CMatrix),
    Quaternion(QMatrix),
}

impl ScalarMatrix {
    pub fn field(&self) -> Field {
        match self {
            ScalarMatrix::Real(_) => Field::Real,
            ScalarMatrix::Complex(_) => Field::Complex,
            ScalarMatrix::Quaternion(_) => Field::Quaternion,
        }
    }

    pub fn size(&self) -> usize {
        match self {
            ScalarMatrix::Real(m) => m.nrows(),
            ScalarMatrix::Complex(m) => m.nrows(),
            ScalarMatrix::Quaternion(m) => m.n(),
        }
    }

    pub fn into_quaternion(self) -> Option<QMatrix> {
        match self {
            ScalarMatrix::Quaternion(m) => Some(m),
            _ => None,
        }
    }

    pub fn into_complex(self) -> Option<CMatrix> {
        match self {
            ScalarMatrix::Complex(m) => Some(m),
            _ => None,
        }
    }
}

/// External scalar extension: the same entries read in a larger field.
/// Complex entries land in the slice `C_i` of `f`.
pub fn extend_scalars(t: &ScalarMatrix, target: Field, f: &Frame) -> Result<ScalarMatrix> {
    if t.field() >= target {
        return Err(Error::Precondition(format!(
            "cannot extend from {:?} to {:?}",
            t.field(),
            target
        )));
    }
    match (t, target) {
        (ScalarMatrix::Real(m), Field::Complex) => {
            if !m.is_square() {
                return Err(Error::Dimension("matrix must be square".into()));
            }
            Ok(ScalarMatrix::Complex(complexify_real(m)))
        }
        (ScalarMatrix::Real(m), Field::Quaternion) => Ok(ScalarMatrix::Quaternion(QMatrix::from_real(m)?)),
        (ScalarMatrix::Complex(m), Field::Quaternion) => {
            Ok(ScalarMatrix::Quaternion(quaternionify_complex(m, f)?))
        }
        _ => unreachable!("field order checked above"),
    }
}
