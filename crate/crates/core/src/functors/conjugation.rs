//! Conjugations of a complex space induced by an orthonormal basis.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::embed::{CMatrix, CVector};

/// Orthonormality tolerance for the defining basis.
pub const BASIS_TOL: f64 = 1e-10;

/// `K v = Σ conj(⟨b_n, v⟩) b_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Conjugation {
    basis: Vec<CVector>,
}

pub fn conjugation_from_basis(basis: Vec<CVector>) -> Result<Conjugation> {
    let n = basis.len();
    if n == 0 {
        return Err(Error::Basis {
            what: "empty basis".into(),
            residual: 0.0,
        });
    }
    if basis.iter().any(|b| b.len() != n) {
        return Err(Error::Basis {
            what: format!("need {n} vectors of length {n} for a complete basis"),
            residual: f64::INFINITY,
        });
    }
    let b = CMatrix::from_columns(&basis);
    let residual = (b.adjoint() * &b - CMatrix::identity(n, n)).norm();
    if residual > BASIS_TOL * (n as f64).sqrt() {
        return Err(Error::Basis {
            what: "basis is not orthonormal".into(),
            residual,
        });
    }
    Ok(Conjugation { basis })
}

impl Conjugation {
    pub fn basis(&self) -> &[CVector] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn apply(&self, v: &CVector) -> CVector {
        self.basis
            .iter()
            .fold(CVector::zeros(v.len()), |acc, b| acc + b * b.dotc(v).conj())
    }

    /// Projection `(v + K v) / 2` onto the fixed real subspace.
    pub fn real_part(&self, v: &CVector) -> CVector {
        (v + self.apply(v)) * Complex64::new(0.5, 0.0)
    }

    /// Distance of `v` from the real span of the basis.
    pub fn fixed_space_residual(&self, v: &CVector) -> f64 {
        self.basis.iter().map(|b| b.dotc(v).im.powi(2)).sum::<f64>().sqrt()
    }

    /// Matrix of `T` in the basis.
    pub fn matrix_in_basis(&self, t: &CMatrix) -> CMatrix {
        let b = CMatrix::from_columns(&self.basis);
        b.adjoint() * t * b
    }

    /// `max_m ‖T K e_m - K T e_m‖`; both sides are antilinear, so agreement on
    /// a complex basis means agreement everywhere.
    pub fn commutation_residual(&self, t: &CMatrix) -> f64 {
        let n = self.dim();
        (0..n)
            .map(|m| {
                let e = CVector::from_fn(n, |r, _| if r == m { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) });
                (t * self.apply(&e) - self.apply(&(t * &e))).norm()
            })
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn standard(n: usize) -> Vec<CVector> {
        (0..n)
            .map(|m| CVector::from_fn(n, |r, _| if r == m { c(1.0, 0.0) } else { c(0.0, 0.0) }))
            .collect()
    }

    #[test]
    fn standard_basis_conjugates_entries() {
        let k = conjugation_from_basis(standard(3)).unwrap();
        let v = CVector::from_vec(vec![c(1.0, 2.0), c(-0.5, 0.0), c(0.0, -3.0)]);
        assert_eq!(k.apply(&v), v.map(|z| z.conj()));
    }

    #[test]
    fn involution_and_antilinearity() {
        let s = 0.5f64.sqrt();
        let basis = vec![
            CVector::from_vec(vec![c(s, 0.0), c(0.0, s)]),
            CVector::from_vec(vec![c(0.0, s), c(s, 0.0)]),
        ];
        let k = conjugation_from_basis(basis).unwrap();
        let v = CVector::from_vec(vec![c(0.3, -1.0), c(2.0, 0.5)]);
        assert!((k.apply(&k.apply(&v)) - &v).norm() < 1e-14);
        assert!((k.apply(&v).norm() - v.norm()).abs() < 1e-14);
        let z = c(0.2, 1.3);
        assert!((k.apply(&(&v * z)) - k.apply(&v) * z.conj()).norm() < 1e-14);
        assert!(k.fixed_space_residual(&k.real_part(&v)) < 1e-14);
    }

    #[test]
    fn commutes_iff_real_in_basis() {
        let k = conjugation_from_basis(standard(2)).unwrap();
        let real = CMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(2.0, 0.0), c(-1.0, 0.0), c(0.5, 0.0)]);
        assert!(k.commutation_residual(&real) < 1e-14);
        let cplx = CMatrix::from_row_slice(2, 2, &[c(1.0, 0.1), c(2.0, 0.0), c(-1.0, 0.0), c(0.5, 0.0)]);
        assert!(k.commutation_residual(&cplx) > 0.1);
        assert!(k.matrix_in_basis(&cplx).map(|z| z.im).norm() > 0.05);
    }

    #[test]
    fn rejects_non_orthonormal() {
        let basis = vec![
            CVector::from_vec(vec![c(1.0, 0.0), c(0.0, 0.0)]),
            CVector::from_vec(vec![c(1.0, 0.0), c(1.0, 0.0)]),
        ];
        assert!(matches!(conjugation_from_basis(basis), Err(Error::Basis { .. })));
    }
}
