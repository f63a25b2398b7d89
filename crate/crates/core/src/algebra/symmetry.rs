//! Symmetries as projection-lattice automorphisms `E ↦ U E U*`.

use crate::algebra::star::{center, StarAlgebra};
use crate::error::{Error, Result};
use crate::linalg::matrix::QMatrix;

/// Unitarity and projection checks use this (relative) tolerance.
pub const STRUCTURE_TOL: f64 = 1e-10;
/// `U' U*` must lie this close to the center.
pub const CENTER_TOL: f64 = 1e-8;

pub(crate) fn check_unitary(u: &QMatrix, name: &str) -> Result<()> {
    let n = u.n();
    let r = (&(&u.adjoint() * u) - &QMatrix::identity(n)).fro_norm();
    if r > STRUCTURE_TOL * (n as f64).sqrt().max(1.0) {
        return Err(Error::structure(format!("{name} is not unitary"), r));
    }
    Ok(())
}

pub(crate) fn projection_residual(e: &QMatrix) -> f64 {
    (&(e * e) - e).fro_norm() + (e - &e.adjoint()).fro_norm()
}

pub(crate) fn check_projection(e: &QMatrix, name: &str) -> Result<()> {
    let r = projection_residual(e);
    if r > STRUCTURE_TOL * e.fro_norm().max(1.0) {
        return Err(Error::structure(format!("{name} is not an orthogonal projection"), r));
    }
    Ok(())
}

/// `h(E) = U E U*`.
pub fn induce_symmetry(u: &QMatrix, e: &QMatrix) -> Result<QMatrix> {
    if u.n() != e.n() {
        return Err(Error::Dimension("U and E differ in size".into()));
    }
    check_unitary(u, "U")?;
    check_projection(e, "E")?;
    Ok(&(u * e) * &u.adjoint())
}

/// Relative distance of `U' U*` from the center of `a`.
pub fn same_symmetry_residual(u: &QMatrix, up: &QMatrix, a: &StarAlgebra) -> Result<f64> {
    if u.n() != a.n() || up.n() != a.n() {
        return Err(Error::Dimension("unitaries and algebra differ in size".into()));
    }
    check_unitary(u, "U")?;
    check_unitary(up, "U'")?;
    let w = up * &u.adjoint();
    Ok(center(a).membership_residual(&w))
}

/// Two unitaries induce the same symmetry iff `U' U*` is central.
pub fn same_symmetry(u: &QMatrix, up: &QMatrix, a: &StarAlgebra) -> Result<bool> {
    Ok(same_symmetry_residual(u, up, a)? <= CENTER_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::embed::quaternionify_complex;
    use crate::linalg::matrix::outer;
    use crate::linalg::spectral::selfadjoint_eigenvalues;
    use crate::quat::{Frame, Quaternion};
    use crate::random::{cmatrix, qmatrix, rng, unit_qvector, unitary};

    #[test]
    fn identity_symmetry() {
        let e = QMatrix::diag(&[Quaternion::ONE, Quaternion::ZERO]);
        assert_eq!(induce_symmetry(&QMatrix::identity(2), &e).unwrap(), e);
    }

    #[test]
    fn rank_one_image() {
        let mut g = rng(2);
        let u = unitary(&mut g, 3);
        let v = unit_qvector(&mut g, 3);
        let h = induce_symmetry(&u, &outer(&v, &v)).unwrap();
        let uv = u.apply(&v);
        assert!((&h - &outer(&uv, &uv)).fro_norm() < 1e-12);
        let ev = selfadjoint_eigenvalues(&h);
        assert!((ev.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn meet_is_preserved() {
        let mut g = rng(4);
        let u = unitary(&mut g, 3);
        let e = QMatrix::diag(&[Quaternion::ONE, Quaternion::ONE, Quaternion::ZERO]);
        let f = QMatrix::diag(&[Quaternion::ZERO, Quaternion::ONE, Quaternion::ONE]);
        let lhs = induce_symmetry(&u, &(&e * &f)).unwrap();
        let rhs = &induce_symmetry(&u, &e).unwrap() * &induce_symmetry(&u, &f).unwrap();
        assert!((&lhs - &rhs).fro_norm() < 1e-12);
    }

    #[test]
    fn rejects_non_projection() {
        let e = QMatrix::identity(2).scale(2.0);
        assert!(matches!(induce_symmetry(&QMatrix::identity(2), &e), Err(Error::Structure { .. })));
    }

    #[test]
    fn central_ambiguity() {
        let mut g = rng(6);
        let full = StarAlgebra::new(2, vec![qmatrix(&mut g, 2), qmatrix(&mut g, 2)]).unwrap();
        let u = unitary(&mut g, 2);
        assert!(same_symmetry(&u, &u.scale(-1.0), &full).unwrap());
        let v = unitary(&mut g, 2);
        assert!(!same_symmetry(&u, &v, &full).unwrap());

        let f = Frame::standard();
        let cplx = StarAlgebra::new(2, vec![quaternionify_complex(&cmatrix(&mut g, 2, 2), &f).unwrap()]).unwrap();
        let j = QMatrix::scalar(2, Quaternion::E1);
        assert!(same_symmetry(&u, &(&j * &u), &cplx).unwrap());
    }
}
