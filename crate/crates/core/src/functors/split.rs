//! The splitting `H = H⁺ ⊕ H⁻` induced by an anti-selfadjoint unitary `J`
//! and an imaginary unit `i`, where `H⁺ = {v : J v = v i}` and
//! `H⁻ = {v : J v = -v i} = H⁺ j`.
//!
//! Operators commuting with `J` leave `H⁺` invariant and are exactly the
//! quaternionic extensions of `C_i`-linear operators on `H⁺`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::embed::{CMatrix, CVector};
use crate::linalg::matrix::QMatrix;
use crate::linalg::vector::{gram_schmidt_pivoted, inner_unchecked, QVector};
use crate::quat::{frame_complete, Frame, ImaginaryUnit, Quaternion, UNIT_TOL};

/// Tolerance for the unitary/anti-selfadjoint checks on `J`.
pub const STRUCTURE_TOL: f64 = 1e-10;
/// `‖TJ - JT‖ <= COMMUTE_TOL ‖T‖` is required before restricting `T`.
pub const COMMUTE_TOL: f64 = 1e-9;
/// Rank cutoff for the pivoted Gram–Schmidt on `P⁺` images.
pub const RANK_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitSpace {
    #[serde(rename = "J")]
    pub j: QMatrix,
    pub i: ImaginaryUnit,
    /// `C_i`-orthonormal basis of `H⁺`; also an orthonormal basis of `H`.
    pub plus_basis: Vec<QVector>,
}

/// Residuals `‖J*J - I‖` and `‖J* + J‖` (Frobenius).
pub fn structure_residuals(j: &QMatrix) -> (f64, f64) {
    let js = j.adjoint();
    let unitary = (&(&js * j) - &QMatrix::identity(j.n())).fro_norm();
    let anti = (&js + j).fro_norm();
    (unitary, anti)
}

pub(crate) fn check_complex_structure(j: &QMatrix, name: &str) -> Result<()> {
    let (u, a) = structure_residuals(j);
    let scale = (j.n() as f64).sqrt().max(1.0);
    if u > STRUCTURE_TOL * scale {
        return Err(Error::structure(format!("{name} is not unitary"), u));
    }
    if a > STRUCTURE_TOL * scale {
        return Err(Error::structure(format!("{name} is not anti-selfadjoint"), a));
    }
    Ok(())
}

/// `P⁺ v = ½ (v - (J v) i)`.
pub fn plus_projection(j: &QMatrix, i: ImaginaryUnit, v: &QVector) -> QVector {
    let jv = j.apply(v).mul_right(i.as_quaternion());
    (v - &jv).scale(0.5)
}

/// `P⁻ v = ½ (v + (J v) i)`.
pub fn minus_projection(j: &QMatrix, i: ImaginaryUnit, v: &QVector) -> QVector {
    let jv = j.apply(v).mul_right(i.as_quaternion());
    (v + &jv).scale(0.5)
}

/// Builds an orthonormal `C_i`-basis of `H⁺_{J,i}`.
///
/// `P⁺` is applied to `δ_m` and `δ_m j` for every `m` (the images of `δ_m`
/// alone need not span), followed by pivoted Gram–Schmidt over `C_i`.
pub fn split_plus_minus(j: &QMatrix, i: ImaginaryUnit) -> Result<SplitSpace> {
    check_complex_structure(j, "J")?;
    let n = j.n();
    let frame = frame_complete(i);
    let jq = frame.j().as_quaternion();
    let mut candidates = Vec::with_capacity(2 * n);
    for m in 0..n {
        let d = QVector::basis(n, m);
        candidates.push(plus_projection(j, i, &d));
        candidates.push(plus_projection(j, i, &d.mul_right(jq)));
    }
    let plus_basis = gram_schmidt_pivoted(&candidates, n, RANK_TOL);
    if plus_basis.len() != n {
        return Err(Error::InternalInconsistency(format!(
            "H⁺ has complex dimension {} but the quaternionic dimension is {n}",
            plus_basis.len()
        )));
    }
    let s = SplitSpace {
        j: j.clone(),
        i,
        plus_basis,
    };
    let r = s.eigen_residual();
    if r > STRUCTURE_TOL * 10.0 {
        return Err(Error::structure("extracted basis is not in H⁺", r));
    }
    Ok(s)
}

impl SplitSpace {
    /// Complex dimension of `H⁺` (equal to the quaternionic dimension of `H`).
    pub fn dim(&self) -> usize {
        self.plus_basis.len()
    }

    /// The frame completing `i`, whose `j` maps `H⁺` onto `H⁻`.
    pub fn frame(&self) -> Frame {
        frame_complete(self.i)
    }

    /// Matrix whose columns are the `H⁺` basis vectors.
    pub fn basis_matrix(&self) -> QMatrix {
        QMatrix::from_columns(&self.plus_basis).expect("basis is square")
    }

    pub fn plus_projection(&self, v: &QVector) -> QVector {
        plus_projection(&self.j, self.i, v)
    }

    pub fn minus_projection(&self, v: &QVector) -> QVector {
        minus_projection(&self.j, self.i, v)
    }

    /// Largest `‖J b - b i‖` over the basis.
    pub fn eigen_residual(&self) -> f64 {
        let iq = self.i.as_quaternion();
        self.plus_basis
            .iter()
            .map(|b| (&self.j.apply(b) - &b.mul_right(iq)).norm())
            .fold(0.0, f64::max)
    }

    /// Largest `‖J (b j) - (b j)(-i)‖` over the basis: `v ↦ v j` maps `H⁺`
    /// into `H⁻`.
    pub fn j_map_residual(&self) -> f64 {
        let f = self.frame();
        let jq = f.j().as_quaternion();
        let mi = -self.i.as_quaternion();
        self.plus_basis
            .iter()
            .map(|b| {
                let bj = b.mul_right(jq);
                (&self.j.apply(&bj) - &bj.mul_right(mi)).norm()
            })
            .fold(0.0, f64::max)
    }

    /// Largest deviation of the Gram matrix from the identity.
    pub fn orthonormality_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for (a, ba) in self.plus_basis.iter().enumerate() {
            for (b, bb) in self.plus_basis.iter().enumerate() {
                let target = if a == b { Quaternion::ONE } else { Quaternion::ZERO };
                worst = worst.max((inner_unchecked(ba, bb) - target).norm());
            }
        }
        worst
    }

    /// Checks the stored invariants; used after deserialization.
    pub fn validate(&self) -> Result<()> {
        check_complex_structure(&self.j, "J")?;
        if self.plus_basis.len() != self.j.n() || self.plus_basis.iter().any(|b| b.len() != self.j.n()) {
            return Err(Error::Dimension("plus_basis must hold n vectors of length n".into()));
        }
        let r = self.eigen_residual().max(self.orthonormality_residual());
        if r > STRUCTURE_TOL * 10.0 {
            return Err(Error::Basis {
                what: "plus_basis is not an orthonormal basis of H⁺".into(),
                residual: r,
            });
        }
        Ok(())
    }

    fn check_frame(&self, f: &Frame) -> Result<()> {
        let a = self.i.direction();
        let b = f.i().direction();
        let d = ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt();
        if d > UNIT_TOL {
            return Err(Error::structure("frame's i differs from the split unit", d));
        }
        Ok(())
    }
}

/// Coordinates of `v = v1 + v2 j` (with `v1, v2 ∈ H⁺`) in the `H⁺` basis.
pub fn components(v: &QVector, s: &SplitSpace, f: &Frame) -> Result<(CVector, CVector)> {
    s.check_frame(f)?;
    if v.len() != s.dim() {
        return Err(Error::Dimension(format!("vector of length {} in H^{}", v.len(), s.dim())));
    }
    let v1 = s.plus_projection(v);
    let v2 = s.plus_projection(&v.mul_right(-f.j().as_quaternion()));
    let coords = |w: &QVector| {
        CVector::from_iterator(
            s.dim(),
            s.plus_basis.iter().map(|b| s.i.to_complex(inner_unchecked(b, w))),
        )
    };
    Ok((coords(&v1), coords(&v2)))
}

/// `Σ b_m v1_m + Σ b_m v2_m j`.
pub fn reconstruct(v1: &CVector, v2: &CVector, s: &SplitSpace, f: &Frame) -> Result<QVector> {
    s.check_frame(f)?;
    let n = s.dim();
    if v1.len() != n || v2.len() != n {
        return Err(Error::Dimension("component length must equal dim H⁺".into()));
    }
    let jq = f.j().as_quaternion();
    let mut out = QVector::zeros(n);
    for (m, b) in s.plus_basis.iter().enumerate() {
        let a = s.i.complex(v1[m]) + s.i.complex(v2[m]) * jq;
        out = &out + &b.mul_right(a);
    }
    Ok(out)
}

/// Matrix of `T|_{H⁺}` in the `H⁺` basis. Requires `[T, J] ≈ 0`.
pub fn restrict_to_plus(t: &QMatrix, s: &SplitSpace) -> Result<CMatrix> {
    if t.n() != s.dim() {
        return Err(Error::Dimension(format!("operator on H^{} restricted from H^{}", t.n(), s.dim())));
    }
    let residual = t.commutator(&s.j).fro_norm();
    if residual > COMMUTE_TOL * t.fro_norm() {
        return Err(Error::DoesNotCommute { residual });
    }
    let images: Vec<QVector> = s.plus_basis.iter().map(|b| t.apply(b)).collect();
    let n = s.dim();
    Ok(CMatrix::from_fn(n, n, |r, c| {
        s.i.to_complex(inner_unchecked(&s.plus_basis[r], &images[c]))
    }))
}

/// Quaternionic linear extension of a `C_i`-linear operator on `H⁺`:
/// `T = Σ b_m M_mn ⟨b_n, ·⟩`.
pub fn extend_from_plus(m: &CMatrix, s: &SplitSpace) -> Result<QMatrix> {
    let n = s.dim();
    if m.nrows() != n || m.ncols() != n {
        return Err(Error::Dimension(format!(
            "complex operator is {}x{} but dim H⁺ = {n}",
            m.nrows(),
            m.ncols()
        )));
    }
    let b = s.basis_matrix();
    let mq = QMatrix::from_fn(n, |r, c| s.i.complex(m[(r, c)]));
    Ok(&(&b * &mq) * &b.adjoint())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn diagonal_j_gives_standard_basis() {
        let j = QMatrix::scalar(3, Quaternion::E1);
        let s = split_plus_minus(&j, ImaginaryUnit::E1).unwrap();
        for (m, b) in s.plus_basis.iter().enumerate() {
            assert!((b - &QVector::basis(3, m)).norm() < 1e-15);
        }
        assert!(s.j_map_residual() < 1e-15);
    }

    #[test]
    fn j_unit_in_other_slice() {
        // J = e2 I with i = e1: H⁺ is not the standard basis but still has dim n
        let j = QMatrix::scalar(2, Quaternion::E2);
        let s = split_plus_minus(&j, ImaginaryUnit::E1).unwrap();
        assert_eq!(s.dim(), 2);
        assert!(s.eigen_residual() < 1e-14);
        assert!(s.orthonormality_residual() < 1e-14);
        assert!(s.j_map_residual() < 1e-14);
    }

    #[test]
    fn rejects_bad_structure() {
        let err = split_plus_minus(&QMatrix::identity(2), ImaginaryUnit::E1).unwrap_err();
        assert!(matches!(err, Error::Structure { .. }));
        let err = split_plus_minus(&QMatrix::scalar(2, Quaternion::E1 * 2.0), ImaginaryUnit::E1).unwrap_err();
        assert!(matches!(err, Error::Structure { .. }));
    }

    #[test]
    fn restrict_j_is_i() {
        let j = QMatrix::scalar(2, Quaternion::E3);
        let s = split_plus_minus(&j, ImaginaryUnit::E1).unwrap();
        let r = restrict_to_plus(&j, &s).unwrap();
        assert!((r - CMatrix::identity(2, 2) * c(0.0, 1.0)).norm() < 1e-14);
        let r = restrict_to_plus(&QMatrix::identity(2), &s).unwrap();
        assert!((r - CMatrix::identity(2, 2)).norm() < 1e-14);
        let back = extend_from_plus(&(CMatrix::identity(2, 2) * c(0.0, 1.0)), &s).unwrap();
        assert!((&back - &j).fro_norm() < 1e-14);
    }

    #[test]
    fn restrict_requires_commutation() {
        let j = QMatrix::scalar(1, Quaternion::E1);
        let s = split_plus_minus(&j, ImaginaryUnit::E1).unwrap();
        let t = QMatrix::scalar(1, Quaternion::E2);
        assert!(matches!(restrict_to_plus(&t, &s), Err(Error::DoesNotCommute { .. })));
    }

    #[test]
    fn components_of_basis_vectors() {
        let j = QMatrix::scalar(2, Quaternion::E1);
        let s = split_plus_minus(&j, ImaginaryUnit::E1).unwrap();
        let f = s.frame();
        let (v1, v2) = components(&s.plus_basis[0], &s, &f).unwrap();
        assert!((v1 - CVector::from_vec(vec![c(1.0, 0.0), c(0.0, 0.0)])).norm() < 1e-15);
        assert!(v2.norm() < 1e-15);
        let bj = s.plus_basis[0].mul_right(f.j().as_quaternion());
        let (v1, v2) = components(&bj, &s, &f).unwrap();
        assert!(v1.norm() < 1e-15);
        assert!((v2 - CVector::from_vec(vec![c(1.0, 0.0), c(0.0, 0.0)])).norm() < 1e-15);
    }

    #[test]
    fn components_reject_foreign_frame() {
        let j = QMatrix::scalar(1, Quaternion::E1);
        let s = split_plus_minus(&j, ImaginaryUnit::E1).unwrap();
        let f = frame_complete(ImaginaryUnit::E2);
        assert!(components(&QVector::basis(1, 0), &s, &f).is_err());
    }

    #[test]
    fn json_roundtrip_validates() {
        let s = split_plus_minus(&QMatrix::scalar(1, Quaternion::E1), ImaginaryUnit::E1).unwrap();
        let text = serde_json::to_string(&s).unwrap();
        assert!(text.starts_with(r#"{"J":{"n":1"#));
        assert!(text.contains(r#""i":[1.0,0.0,0.0]"#));
        let back: SplitSpace = serde_json::from_str(&text).unwrap();
        back.validate().unwrap();
        assert_eq!(back, s);
    }
}
