//! Finite *-algebras of quaternionic operators and their commutants.
//!
//! `B(H^n)` is a real vector space of dimension `4n²`; the commutant of a
//! set of operators is the common real nullspace of the maps
//! `X ↦ X A - A X`, found one generator at a time with the SVD.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::embed::{RMatrix, RVector};
use crate::linalg::matrix::QMatrix;
use crate::linalg::svd::{right_singular, thin_svd};

/// Relative singular-value cutoff of the commutant nullspace.
pub const COMMUTANT_TOL: f64 = 1e-9;
/// Generators closer than this (relative) are treated as equal.
pub const DEDUP_TOL: f64 = 1e-12;
/// Relative residual below which a product already lies in a span.
pub const SPAN_TOL: f64 = 1e-9;

/// A unital *-algebra given by generators, closed under adjoints.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "StarAlgebraWire", into = "StarAlgebraWire")]
pub struct StarAlgebra {
    n: usize,
    generators: Vec<QMatrix>,
    #[serde(skip)]
    commutant: OnceLock<CommutantBasis>,
}

#[derive(Serialize, Deserialize)]
struct StarAlgebraWire {
    n: usize,
    generators: Vec<QMatrix>,
}

impl TryFrom<StarAlgebraWire> for StarAlgebra {
    type Error = Error;

    fn try_from(w: StarAlgebraWire) -> Result<Self> {
        StarAlgebra::new(w.n, w.generators)
    }
}

impl From<StarAlgebra> for StarAlgebraWire {
    fn from(a: StarAlgebra) -> Self {
        StarAlgebraWire {
            n: a.n,
            generators: a.generators,
        }
    }
}

impl PartialEq for StarAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.generators == other.generators
    }
}

fn near(a: &QMatrix, b: &QMatrix) -> bool {
    (a - b).fro_norm() <= DEDUP_TOL * a.fro_norm().max(b.fro_norm()).max(1.0)
}

impl StarAlgebra {
    /// Adds `I` and the adjoints of the generators, dropping near duplicates.
    pub fn new(n: usize, generators: Vec<QMatrix>) -> Result<StarAlgebra> {
        if n == 0 {
            return Err(Error::Dimension("ambient dimension must be positive".into()));
        }
        let mut closed: Vec<QMatrix> = vec![QMatrix::identity(n)];
        for g in generators {
            if g.n() != n {
                return Err(Error::Dimension(format!("generator of size {} in dimension {n}", g.n())));
            }
            if !g.is_finite() {
                return Err(Error::Precondition("generator has non-finite entries".into()));
            }
            let gs = g.adjoint();
            for m in [g, gs] {
                if !closed.iter().any(|c| near(c, &m)) {
                    closed.push(m);
                }
            }
        }
        Ok(StarAlgebra {
            n,
            generators: closed,
            commutant: OnceLock::new(),
        })
    }

    /// Infers `n` from the first generator.
    pub fn from_generators(generators: Vec<QMatrix>) -> Result<StarAlgebra> {
        let n = generators
            .first()
            .map(QMatrix::n)
            .ok_or_else(|| Error::Precondition("no generators given".into()))?;
        StarAlgebra::new(n, generators)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Generators including `I` and all adjoints.
    pub fn generators(&self) -> &[QMatrix] {
        &self.generators
    }

    /// Commutant, computed once and cached.
    pub fn commutant(&self) -> &CommutantBasis {
        self.commutant.get_or_init(|| commutant_of(self.n, &self.generators))
    }

    /// Adjoint-closure residual: the largest distance of a generator's
    /// adjoint from the generator list.
    pub fn adjoint_closure_residual(&self) -> f64 {
        self.generators
            .iter()
            .map(|g| {
                let gs = g.adjoint();
                self.generators
                    .iter()
                    .map(|h| (&gs - h).fro_norm())
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    }
}

/// An R-orthonormal basis (under `Re tr(X* Y)`) of a real subspace of
/// `B(H^n)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommutantBasis {
    pub n: usize,
    pub basis: Vec<QMatrix>,
    pub dim_r: usize,
}

impl CommutantBasis {
    fn from_columns(n: usize, cols: &RMatrix) -> CommutantBasis {
        let basis: Vec<QMatrix> = (0..cols.ncols())
            .map(|c| QMatrix::from_real_vec(n, cols.column(c).as_slice()))
            .collect();
        CommutantBasis {
            n,
            dim_r: basis.len(),
            basis,
        }
    }

    pub fn from_orthonormal(n: usize, basis: Vec<QMatrix>) -> CommutantBasis {
        CommutantBasis {
            n,
            dim_r: basis.len(),
            basis,
        }
    }

    /// Orthogonal projection of `x` onto the span.
    pub fn project(&self, x: &QMatrix) -> QMatrix {
        self.basis
            .iter()
            .fold(QMatrix::zeros(self.n), |acc, b| &acc + &b.scale(b.real_dot(x)))
    }

    /// `‖x - P x‖ / max(‖x‖, 1e-300)`.
    pub fn membership_residual(&self, x: &QMatrix) -> f64 {
        let scale = x.fro_norm().max(1e-300);
        (x - &self.project(x)).fro_norm() / scale
    }

    /// Largest membership residual of the elements of `other`.
    pub fn contains_residual(&self, other: &CommutantBasis) -> f64 {
        other
            .basis
            .iter()
            .map(|b| self.membership_residual(b))
            .fold(0.0, f64::max)
    }

    /// Largest `‖[B, A]‖` over basis elements and the given operators.
    pub fn commutation_residual(&self, ops: &[QMatrix]) -> f64 {
        let mut worst = 0.0f64;
        for b in &self.basis {
            for a in ops {
                worst = worst.max(b.commutator(a).fro_norm() / a.fro_norm().max(1e-300));
            }
        }
        worst
    }

    /// Spot check that the span is a *-algebra: adjoints and pairwise
    /// products of basis elements stay inside.
    pub fn closure_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for (k, a) in self.basis.iter().enumerate() {
            worst = worst.max(self.membership_residual(&a.adjoint()));
            for b in self.basis.iter().skip(k).take(4) {
                let ab = a * b;
                if ab.fro_norm() > 1e-12 {
                    worst = worst.max(self.membership_residual(&ab));
                }
            }
        }
        worst
    }

    /// Largest deviation of the Gram matrix from the identity.
    pub fn orthonormality_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for (a, ba) in self.basis.iter().enumerate() {
            for (b, bb) in self.basis.iter().enumerate() {
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((ba.real_dot(bb) - target).abs());
            }
        }
        worst
    }

    /// Mutual membership residual between two subspaces (infinite when the
    /// dimensions differ).
    pub fn distance(&self, other: &CommutantBasis) -> f64 {
        if self.dim_r != other.dim_r {
            return f64::INFINITY;
        }
        self.contains_residual(other).max(other.contains_residual(self))
    }
}

/// `vec(X A - A X)` for every column `X` of `cols`.
fn constraint_image(n: usize, cols: &RMatrix, a: &QMatrix) -> RMatrix {
    let mut out = RMatrix::zeros(cols.nrows(), cols.ncols());
    for c in 0..cols.ncols() {
        let x = QMatrix::from_real_vec(n, cols.column(c).as_slice());
        let v = x.commutator(a).to_real_vec();
        out.column_mut(c).copy_from_slice(&v);
    }
    out
}

/// Common real nullspace of `X ↦ [X, A]` over `ops`, as orthonormal columns.
fn nullspace_columns(n: usize, ops: &[QMatrix]) -> RMatrix {
    let dim = 4 * n * n;
    let mut basis = RMatrix::identity(dim, dim);
    for a in ops {
        if basis.ncols() == 0 {
            break;
        }
        let scale = a.fro_norm();
        if scale == 0.0 {
            continue;
        }
        let a = a.scale(1.0 / scale);
        let m = constraint_image(n, &basis, &a);
        let (sigma, v) = right_singular(&m);
        let cutoff = COMMUTANT_TOL * sigma.first().copied().unwrap_or(0.0).max(1.0);
        let keep: Vec<usize> = (0..sigma.len()).filter(|&k| sigma[k] <= cutoff).collect();
        let y = RMatrix::from_fn(v.nrows(), keep.len(), |r, c| v[(r, keep[c])]);
        basis = &basis * y;
    }
    basis
}

pub(crate) fn commutant_of(n: usize, ops: &[QMatrix]) -> CommutantBasis {
    let cols = nullspace_columns(n, ops);
    CommutantBasis::from_columns(n, &cols)
}

/// Real basis of `{T : [T, A] = 0 for every generator A}`.
pub fn commutant(a: &StarAlgebra) -> CommutantBasis {
    a.commutant().clone()
}

/// Commutant of the commutant: the von Neumann algebra generated by `a`.
pub fn bicommutant(a: &StarAlgebra) -> CommutantBasis {
    commutant_of(a.n(), &a.commutant().basis)
}

/// `A'' ∩ A'`, computed as the commutant of the generators together with
/// the commutant basis.
pub fn center(a: &StarAlgebra) -> CommutantBasis {
    let mut ops = a.generators().to_vec();
    ops.extend(a.commutant().basis.iter().cloned());
    commutant_of(a.n(), &ops)
}

/// Orthonormal basis of the column range, dropping singular values below
/// `SPAN_TOL` relative to the largest.
fn range_columns(m: &RMatrix) -> RMatrix {
    if m.ncols() == 0 {
        return m.clone();
    }
    let (sigma, u, _) = thin_svd(m);
    let sigma_max = sigma.first().copied().unwrap_or(0.0);
    let keep = sigma.iter().filter(|&&x| sigma_max > 0.0 && x > SPAN_TOL * sigma_max).count();
    u.columns(0, keep).into_owned()
}

/// Real span of all words in the generators (including `I`).
///
/// The span is grown as `S ← range(S ∪ g S)` until its dimension stops
/// changing. Each step re-orthonormalizes through an SVD, so nearly
/// dependent words cannot amplify round-off into spurious directions.
pub fn generated_algebra(a: &StarAlgebra) -> CommutantBasis {
    let n = a.n();
    let gens: Vec<QMatrix> = a
        .generators()
        .iter()
        .filter(|g| g.fro_norm() > 0.0)
        .map(|g| g.scale(1.0 / g.fro_norm()))
        .collect();
    let vecs: Vec<RVector> = gens.iter().map(|g| RVector::from_vec(g.to_real_vec())).collect();
    let mut cols = range_columns(&RMatrix::from_columns(&vecs));
    loop {
        let mut cand: Vec<RVector> = cols.column_iter().map(|c| c.into_owned()).collect();
        for c in 0..cols.ncols() {
            let x = QMatrix::from_real_vec(n, cols.column(c).as_slice());
            cand.extend(gens.iter().map(|g| RVector::from_vec((g * &x).to_real_vec())));
        }
        let next = range_columns(&RMatrix::from_columns(&cand));
        let done = next.ncols() == cols.ncols();
        cols = next;
        if done {
            break;
        }
    }
    CommutantBasis::from_columns(n, &cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quat::Quaternion;

    fn matrix_units(n: usize) -> Vec<QMatrix> {
        let mut out = Vec::new();
        for r in 0..n {
            for c in 0..n {
                for u in [Quaternion::ONE, Quaternion::E1, Quaternion::E2, Quaternion::E3] {
                    out.push(QMatrix::from_fn(n, |a, b| if a == r && b == c { u } else { Quaternion::ZERO }));
                }
            }
        }
        out
    }

    #[test]
    fn full_algebra_has_trivial_commutant() {
        let a = StarAlgebra::new(2, matrix_units(2)).unwrap();
        let c = commutant(&a);
        assert_eq!(c.dim_r, 1);
        // the single basis element is ±I/√n
        let b = &c.basis[0];
        let s = b[(0, 0)].w.signum();
        assert!((&b.scale(s) - &QMatrix::identity(2).scale(0.5f64.sqrt())).fro_norm() < 1e-12);
    }

    #[test]
    fn identity_commutes_with_everything() {
        let a = StarAlgebra::new(3, vec![]).unwrap();
        assert_eq!(a.generators().len(), 1);
        assert_eq!(commutant(&a).dim_r, 36);
        assert!(commutant(&a).orthonormality_residual() < 1e-12);
    }

    #[test]
    fn complex_scalars_commutant() {
        // diagonal real matrices and the real swap: commutant of the real
        // full algebra M_2(R) inside M_2(H) is H·I
        let swap = QMatrix::from_fn(2, |r, c| Quaternion::real(if r != c { 1.0 } else { 0.0 }));
        let d = QMatrix::diag(&[Quaternion::ONE, Quaternion::real(2.0)]);
        let a = StarAlgebra::new(2, vec![swap.clone(), d.clone()]).unwrap();
        assert_eq!(commutant(&a).dim_r, 4);
        // adding e1 I leaves C_e1 · I
        let a = StarAlgebra::new(2, vec![swap, d, QMatrix::scalar(2, Quaternion::E1)]).unwrap();
        let c = commutant(&a);
        assert_eq!(c.dim_r, 2);
        assert!(c.membership_residual(&QMatrix::scalar(2, Quaternion::E1)) < 1e-12);
        assert!(c.closure_residual() < 1e-12);
    }

    #[test]
    fn block_diagonal_center_holds_block_projections() {
        let p = QMatrix::diag(&[Quaternion::ONE, Quaternion::ZERO]);
        let a = StarAlgebra::new(2, vec![p.clone()]).unwrap();
        let z = center(&a);
        assert_eq!(z.dim_r, 2);
        assert!(z.membership_residual(&p) < 1e-12);
        assert!(z.membership_residual(&(&QMatrix::identity(2) - &p)) < 1e-12);
    }

    #[test]
    fn generated_algebra_of_units_is_everything() {
        let a = StarAlgebra::new(2, matrix_units(2)).unwrap();
        assert_eq!(generated_algebra(&a).dim_r, 16);
        assert_eq!(bicommutant(&a).dim_r, 16);
    }

    #[test]
    fn planted_complex_bicommutant_at_the_dimension_cap() {
        // the commutator map of J has a 128-fold zero singular value here
        use crate::linalg::embed::quaternionify_complex;
        use crate::random::{cmatrix, frame, rng, unitary};
        let mut g = rng(1);
        let n = 8;
        let f = frame(&mut g);
        let u = unitary(&mut g, n);
        let x = quaternionify_complex(&cmatrix(&mut g, n, n), &f).unwrap();
        let a = StarAlgebra::new(n, vec![&(&u * &x) * &u.adjoint()]).unwrap();
        assert_eq!(commutant(&a).dim_r, 2);
        let bi = bicommutant(&a);
        assert_eq!(bi.dim_r, 2 * n * n);
        assert!(bi.commutation_residual(&commutant(&a).basis) < 1e-8);
    }

    #[test]
    fn json_adds_identity_and_adjoints() {
        let text = r#"{"n":1,"generators":[{"n":1,"entries":[[[0.0,1.0,0.0,0.0]]]}]}"#;
        let a: StarAlgebra = serde_json::from_str(text).unwrap();
        assert_eq!(a.generators().len(), 3);
        assert!(a.adjoint_closure_residual() == 0.0);
        let back: StarAlgebra = serde_json::from_str(&serde_json::to_string(&a).unwrap()).unwrap();
        assert_eq!(back, a);
        assert!(serde_json::from_str::<StarAlgebra>(r#"{"n":0,"generators":[]}"#).is_err());
    }
}
