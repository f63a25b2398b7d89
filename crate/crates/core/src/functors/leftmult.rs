//! Left scalar multiplications generated by a real subspace.
//!
//! For an anticommuting pair `(I, J)` of unitary anti-selfadjoint operators,
//! `H_R = {v : I v = v i, J v = v j}` is a real form of `H`, and
//! `M_a = Σ b_l a ⟨b_l, ·⟩` over an orthonormal basis of `H_R` is a left
//! action of `H` by right-linear operators with `M_i = I`, `M_j = J` and
//! `M_k = M_i M_j = IJ`.

use crate::error::{Error, Result};
use crate::functors::orbit_gram_schmidt;
use crate::functors::split::check_complex_structure;
use crate::linalg::embed::RVector;
use crate::linalg::matrix::{outer, QMatrix};
use crate::linalg::vector::QVector;
use crate::quat::{Frame, Quaternion};

/// Anticommutation tolerance for `(I, J)`.
pub const STRUCTURE_TOL: f64 = 1e-10;
/// `M_i = I`, `M_j = J` must hold to this accuracy.
pub const RECOVERY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct LeftMultiplication {
    frame: Frame,
    real_basis: Vec<QVector>,
}

/// Computes `H_R` for `(I, J)` relative to the frame `f` and the left
/// multiplication it generates.
pub fn real_subspace_and_left_mult(i_op: &QMatrix, j_op: &QMatrix, f: &Frame) -> Result<LeftMultiplication> {
    if i_op.n() != j_op.n() {
        return Err(Error::Dimension("I and J differ in size".into()));
    }
    check_complex_structure(i_op, "I")?;
    check_complex_structure(j_op, "J")?;
    let n = i_op.n();
    let anti = i_op.anticommutator(j_op).fro_norm();
    if anti > STRUCTURE_TOL * (n as f64).sqrt().max(1.0) {
        return Err(Error::structure("I and J do not anticommute", anti));
    }
    let iq = f.i().as_quaternion();
    let jq = f.j().as_quaternion();
    // A_i v = -(I v) i and A_j v = -(J v) j are commuting real involutions
    // whose joint +1 eigenspace is H_R.
    let a_i = |v: &QVector| -&i_op.apply(v).mul_right(iq);
    let a_j = |v: &QVector| -&j_op.apply(v).mul_right(jq);
    let project = |v: &QVector| {
        let w = v + &a_j(v);
        (&w + &a_i(&w)).scale(0.25)
    };
    let units = [Quaternion::ONE, iq, jq, f.k().as_quaternion()];
    let mut candidates = Vec::with_capacity(4 * n);
    for m in 0..n {
        for u in units {
            let p = project(&QVector::basis(n, m).mul_right(u));
            candidates.push(RVector::from_vec(p.to_real()));
        }
    }
    let (pivots, _) = orbit_gram_schmidt(&candidates, |v| vec![v.clone()], n, 1e-10);
    if pivots.is_empty() {
        return Err(Error::structure("H_R is empty", 0.0));
    }
    if pivots.len() != n {
        return Err(Error::structure(
            format!("H_R has real dimension {} instead of {n}", pivots.len()),
            (n - pivots.len()) as f64,
        ));
    }
    let real_basis = pivots
        .iter()
        .map(|p| QVector::from_real_coords(p.as_slice()))
        .collect();
    let l = LeftMultiplication { frame: *f, real_basis };
    let r = (&l.action(iq) - i_op).fro_norm().max((&l.action(jq) - j_op).fro_norm());
    if r > RECOVERY_TOL * (n as f64).sqrt().max(1.0) {
        return Err(Error::structure("left multiplication does not reproduce I and J", r));
    }
    Ok(l)
}

impl LeftMultiplication {
    /// Pointwise multiplication on `H^n`: `M_a = a I`, real form `R^n`.
    pub fn pointwise(n: usize, f: Frame) -> LeftMultiplication {
        LeftMultiplication {
            frame: f,
            real_basis: (0..n).map(|m| QVector::basis(n, m)).collect(),
        }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn real_basis(&self) -> &[QVector] {
        &self.real_basis
    }

    pub fn dim(&self) -> usize {
        self.real_basis.len()
    }

    /// `M_a v = Σ b_l a ⟨b_l, v⟩`.
    pub fn action(&self, a: Quaternion) -> QMatrix {
        let n = self.dim();
        self.real_basis
            .iter()
            .fold(QMatrix::zeros(n), |acc, b| &acc + &outer(&b.mul_right(a), b))
    }

    pub fn apply(&self, a: Quaternion, v: &QVector) -> QVector {
        self.real_basis.iter().fold(QVector::zeros(v.len()), |acc, b| {
            let c = crate::linalg::vector::inner_unchecked(b, v);
            &acc + &b.mul_right(a * c)
        })
    }

    /// Real components `(f0, f1, f2, f3)` of `v = f0 + M_i f1 + M_j f2 + M_k f3`
    /// as coordinate vectors over the real basis.
    pub fn real_components(&self, v: &QVector) -> [RVector; 4] {
        let n = self.dim();
        let mut out = [RVector::zeros(n), RVector::zeros(n), RVector::zeros(n), RVector::zeros(n)];
        for (l, b) in self.real_basis.iter().enumerate() {
            let a = self.frame.coords(crate::linalg::vector::inner_unchecked(b, v));
            for s in 0..4 {
                out[s][l] = a[s];
            }
        }
        out
    }

    /// Inverse of [`LeftMultiplication::real_components`].
    pub fn from_real_components(&self, f: &[RVector; 4]) -> QVector {
        let n = self.dim();
        self.real_basis.iter().enumerate().fold(QVector::zeros(n), |acc, (l, b)| {
            let a = self.frame.from_coords([f[0][l], f[1][l], f[2][l], f[3][l]]);
            &acc + &b.mul_right(a)
        })
    }

    /// Largest deviation of the real basis from orthonormality.
    pub fn orthonormality_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for (a, ba) in self.real_basis.iter().enumerate() {
            for (b, bb) in self.real_basis.iter().enumerate() {
                let target = if a == b { Quaternion::ONE } else { Quaternion::ZERO };
                worst = worst.max((crate::linalg::vector::inner_unchecked(ba, bb) - target).norm());
            }
        }
        worst
    }
}
