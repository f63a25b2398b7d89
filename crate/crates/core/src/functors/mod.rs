//! Scalar extension and restriction.
//!
//! External constructions reinterpret matrix entries in a larger field.
//! Internal constructions keep the real space and enlarge its scalars with
//! anticommuting complex structures. The `H⁺/H⁻` splitting goes the other
//! way: a quaternionic space with a commuting `J` is the extension of the
//! complex space `H⁺`.

pub mod conjugation;
pub mod extend;
pub mod internal;
pub mod leftmult;
pub mod split;

pub use conjugation::{conjugation_from_basis, Conjugation};
pub use extend::{extend_scalars, Field, ScalarMatrix};
pub use internal::{
    internal_complexify, internal_quaternionify, InternalComplexification,
    InternalQuaternionification,
};
pub use leftmult::{real_subspace_and_left_mult, LeftMultiplication};
pub use split::{components, extend_from_plus, reconstruct, restrict_to_plus, split_plus_minus, SplitSpace};

use crate::linalg::embed::RVector;

/// Pivoted real Gram–Schmidt that accepts whole orbits at once.
///
/// Each accepted pivot `v` is normalized and `orbit(v)` (which must start
/// with `v` and be orthonormal whenever `v` is orthogonal to everything
/// accepted so far) is appended to the orthonormal set. Returns the pivots
/// and the full orthonormal set.
pub(crate) fn orbit_gram_schmidt(
    candidates: &[RVector],
    orbit: impl Fn(&RVector) -> Vec<RVector>,
    limit: usize,
    rank_tol: f64,
) -> (Vec<RVector>, Vec<RVector>) {
    let scale = candidates.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut residuals = candidates.to_vec();
    let mut pivots = Vec::new();
    let mut all: Vec<RVector> = Vec::new();
    if scale == 0.0 {
        return (pivots, all);
    }
    while pivots.len() < limit {
        let norms: Vec<f64> = residuals.iter().map(|r| r.norm()).collect();
        let best_norm = norms.iter().copied().fold(0.0, f64::max);
        // near-ties go to the earliest candidate so bases come out in order
        let best = norms
            .iter()
            .position(|&x| x >= best_norm * (1.0 - 1e-8) && x > 0.0)
            .unwrap_or(usize::MAX);
        if best == usize::MAX || best_norm <= rank_tol * scale {
            break;
        }
        let mut v = &residuals[best] / best_norm;
        for q in &all {
            let c = q.dot(&v);
            v -= q * c;
        }
        let norm = v.norm();
        v /= norm;
        for w in orbit(&v) {
            for r in residuals.iter_mut() {
                let c = w.dot(r);
                *r -= &w * c;
            }
            all.push(w);
        }
        pivots.push(v);
    }
    (pivots, all)
}
