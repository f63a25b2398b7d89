//! Pure states as probability measures on the projection lattice.

use serde::{Deserialize, Serialize};

use crate::algebra::symmetry::check_projection;
use crate::error::{Error, Result};
use crate::linalg::matrix::QMatrix;
use crate::linalg::vector::QVector;

pub const NORM_TOL: f64 = 1e-10;
/// Propositions with probability at or below this cannot be conditioned on.
pub const ZERO_PROBABILITY: f64 = 1e-12;

/// `μ(E) = ‖E v‖²` for a unit vector `v`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateFunctional {
    vector: QVector,
}

impl StateFunctional {
    pub fn new(v: QVector) -> Result<StateFunctional> {
        let norm = v.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::Normalization { norm });
        }
        Ok(StateFunctional { vector: v })
    }

    pub fn vector(&self) -> &QVector {
        &self.vector
    }

    pub fn prob(&self, e: &QMatrix) -> f64 {
        e.apply(&self.vector).norm_sqr()
    }

    /// `μ(F E F) / μ(F)`, the conditional probability of `E` given `F`.
    pub fn conditional(&self, f: &QMatrix, e: &QMatrix) -> f64 {
        let fv = f.apply(&self.vector);
        let efv = e.apply(&fv);
        let num = crate::linalg::vector::inner_unchecked(&fv, &efv).w;
        num / fv.norm_sqr()
    }
}

/// State after the proposition `F` has been found true.
pub fn lueders_update(mu: &StateFunctional, f: &QMatrix) -> Result<StateFunctional> {
    if f.n() != mu.vector.len() {
        return Err(Error::Dimension("projection and state differ in size".into()));
    }
    check_projection(f, "F")?;
    let fv = f.apply(&mu.vector);
    let p = fv.norm_sqr();
    if p <= ZERO_PROBABILITY {
        return Err(Error::ZeroProbability { probability: p });
    }
    StateFunctional::new(fv.scale(1.0 / p.sqrt()))
}
