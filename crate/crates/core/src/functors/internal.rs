//! Internal complexification and quaternionification of a real space
//! carrying one complex structure `J`, or an anticommuting pair `(I, J)`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::functors::orbit_gram_schmidt;
use crate::linalg::embed::{CMatrix, CVector, RMatrix, RVector};
use crate::linalg::matrix::QMatrix;
use crate::linalg::vector::QVector;
use crate::quat::{Frame, Quaternion};

/// Tolerance for the orthogonality and anticommutation checks.
pub const STRUCTURE_TOL: f64 = 1e-10;
/// Relative tolerance for `[T, J] = 0`.
pub const COMMUTE_TOL: f64 = 1e-9;

const RANK_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct InternalComplexification {
    /// Complex dimension, half the real one.
    pub dim: usize,
    /// Complex orthonormal basis `v_m`; together with `J v_m` a real
    /// orthonormal basis.
    pub basis: Vec<RVector>,
    pub j: RMatrix,
    /// Matrices of the input operators in `basis`.
    pub operators: Vec<CMatrix>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InternalQuaternionification {
    /// Quaternionic dimension, a quarter of the real one.
    pub dim: usize,
    /// `(v_m, I v_m, J v_m, JI v_m)` runs through a real orthonormal basis.
    pub basis: Vec<RVector>,
    pub i_op: RMatrix,
    pub j_op: RMatrix,
    pub frame: Frame,
    pub operators: Vec<QMatrix>,
}

fn check_square(m: &RMatrix, n: usize, name: &str) -> Result<()> {
    if m.nrows() != n || m.ncols() != n {
        return Err(Error::Dimension(format!(
            "{name} is {}x{}, expected {n}x{n}",
            m.nrows(),
            m.ncols()
        )));
    }
    Ok(())
}

fn check_structure(m: &RMatrix, name: &str) -> Result<()> {
    let n = m.nrows();
    let scale = (n as f64).sqrt().max(1.0);
    let unitary = (m.transpose() * m - RMatrix::identity(n, n)).norm();
    if unitary > STRUCTURE_TOL * scale {
        return Err(Error::structure(format!("{name} is not orthogonal"), unitary));
    }
    let anti = (m + m.transpose()).norm();
    if anti > STRUCTURE_TOL * scale {
        return Err(Error::structure(format!("{name} is not antisymmetric"), anti));
    }
    Ok(())
}

fn check_commutes(ops: &[RMatrix], s: &RMatrix) -> Result<()> {
    for t in ops {
        check_square(t, s.nrows(), "operator")?;
        let residual = (t * s - s * t).norm();
        if residual > COMMUTE_TOL * t.norm().max(1.0) {
            return Err(Error::DoesNotCommute { residual });
        }
    }
    Ok(())
}

fn standard_candidates(n: usize) -> Vec<RVector> {
    (0..n).map(|k| RVector::from_fn(n, |r, _| if r == k { 1.0 } else { 0.0 })).collect()
}

/// The real space with `J` as multiplication by `i`.
pub fn internal_complexify(reals: &[RMatrix], j: &RMatrix) -> Result<InternalComplexification> {
    let n = j.nrows();
    check_square(j, n, "J")?;
    if n % 2 != 0 {
        return Err(Error::Dimension(format!("real dimension {n} is odd")));
    }
    check_structure(j, "J")?;
    check_commutes(reals, j)?;

    let (basis, _) = orbit_gram_schmidt(
        &standard_candidates(n),
        |v| vec![v.clone(), j * v],
        n / 2,
        RANK_TOL,
    );
    if basis.len() != n / 2 {
        return Err(Error::InternalInconsistency(format!(
            "found {} complex basis vectors in real dimension {n}",
            basis.len()
        )));
    }
    let mut out = InternalComplexification {
        dim: n / 2,
        basis,
        j: j.clone(),
        operators: Vec::new(),
    };
    out.operators = reals.iter().map(|t| out.matrix_of(t)).collect();
    Ok(out)
}

impl InternalComplexification {
    /// `⟨v, u⟩_J = ⟨v, u⟩ - i ⟨v, J u⟩`.
    pub fn inner(&self, v: &RVector, u: &RVector) -> Complex64 {
        Complex64::new(v.dot(u), -v.dot(&(&self.j * u)))
    }

    /// `(a + ib) v = a v + b J v`.
    pub fn scalar_mul(&self, z: Complex64, v: &RVector) -> RVector {
        v * z.re + (&self.j * v) * z.im
    }

    pub fn coords(&self, v: &RVector) -> CVector {
        CVector::from_iterator(self.dim, self.basis.iter().map(|b| self.inner(b, v)))
    }

    pub fn from_coords(&self, c: &CVector) -> RVector {
        self.basis
            .iter()
            .zip(c.iter())
            .fold(RVector::zeros(self.j.nrows()), |acc, (b, z)| acc + self.scalar_mul(*z, b))
    }

    pub fn matrix_of(&self, t: &RMatrix) -> CMatrix {
        let images: Vec<RVector> = self.basis.iter().map(|b| t * b).collect();
        CMatrix::from_fn(self.dim, self.dim, |r, c| self.inner(&self.basis[r], &images[c]))
    }
}

/// The real space with `v a = a0 v + a1 I v + a2 J v + a3 JI v`, where
/// `a = a0 + a1 i + a2 j + a3 k` in the frame `f`.
pub fn internal_quaternionify(
    reals: &[RMatrix],
    i_op: &RMatrix,
    j_op: &RMatrix,
    f: &Frame,
) -> Result<InternalQuaternionification> {
    let n = i_op.nrows();
    check_square(i_op, n, "I")?;
    check_square(j_op, n, "J")?;
    if n % 4 != 0 {
        return Err(Error::Dimension(format!("real dimension {n} is not divisible by 4")));
    }
    check_structure(i_op, "I")?;
    check_structure(j_op, "J")?;
    let anti = (i_op * j_op + j_op * i_op).norm();
    if anti > STRUCTURE_TOL * (n as f64).sqrt().max(1.0) {
        return Err(Error::structure("I and J do not anticommute", anti));
    }
    check_commutes(reals, i_op)?;
    check_commutes(reals, j_op)?;

    let ji = j_op * i_op;
    let (basis, _) = orbit_gram_schmidt(
        &standard_candidates(n),
        |v| vec![v.clone(), i_op * v, j_op * v, &ji * v],
        n / 4,
        RANK_TOL,
    );
    if basis.len() != n / 4 {
        return Err(Error::InternalInconsistency(format!(
            "found {} quaternionic basis vectors in real dimension {n}",
            basis.len()
        )));
    }
    let mut out = InternalQuaternionification {
        dim: n / 4,
        basis,
        i_op: i_op.clone(),
        j_op: j_op.clone(),
        frame: *f,
        operators: Vec::new(),
    };
    out.operators = reals.iter().map(|t| out.matrix_of(t)).collect();
    Ok(out)
}

impl InternalQuaternionification {
    /// `⟨v, u⟩_Θ = ⟨v, u⟩ - ⟨v, I u⟩ i - ⟨v, J u⟩ j - ⟨v, JI u⟩ k`.
    pub fn inner(&self, v: &RVector, u: &RVector) -> Quaternion {
        let iu = &self.i_op * u;
        let ju = &self.j_op * u;
        let jiu = &self.j_op * &iu;
        self.frame
            .from_coords([v.dot(u), -v.dot(&iu), -v.dot(&ju), -v.dot(&jiu)])
    }

    pub fn act(&self, v: &RVector, a: Quaternion) -> RVector {
        let c = self.frame.coords(a);
        let iv = &self.i_op * v;
        let jv = &self.j_op * v;
        let jiv = &self.j_op * &iv;
        v * c[0] + iv * c[1] + jv * c[2] + jiv * c[3]
    }

    pub fn coords(&self, v: &RVector) -> QVector {
        QVector::new(self.basis.iter().map(|b| self.inner(b, v)).collect())
    }

    pub fn from_coords(&self, q: &QVector) -> RVector {
        self.basis
            .iter()
            .zip(q.iter())
            .fold(RVector::zeros(self.i_op.nrows()), |acc, (b, a)| acc + self.act(b, *a))
    }

    pub fn matrix_of(&self, t: &RMatrix) -> QMatrix {
        let images: Vec<RVector> = self.basis.iter().map(|b| t * b).collect();
        QMatrix::from_fn(self.dim, |r, c| self.inner(&self.basis[r], &images[c]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::embed::left_mult_matrix;

    fn rot(theta: f64) -> RMatrix {
        RMatrix::from_row_slice(2, 2, &[theta.cos(), -theta.sin(), theta.sin(), theta.cos()])
    }

    /// Real 4x4 matrix of `x ↦ x q` on `(w, x, y, z)` coordinates.
    fn right_mult(q: Quaternion) -> RMatrix {
        let basis = [Quaternion::ONE, Quaternion::E1, Quaternion::E2, Quaternion::E3];
        RMatrix::from_fn(4, 4, |r, c| <[f64; 4]>::from(basis[c] * q)[r])
    }

    fn left_mult(q: Quaternion) -> RMatrix {
        let l = left_mult_matrix(q);
        RMatrix::from_fn(4, 4, |r, c| l[r][c])
    }

    #[test]
    fn plane_rotation_is_a_phase() {
        let j = rot(std::f64::consts::FRAC_PI_2);
        let theta = 0.7;
        let c = internal_complexify(&[rot(theta)], &j).unwrap();
        assert_eq!(c.dim, 1);
        assert!((&c.basis[0] - RVector::from_vec(vec![1.0, 0.0])).norm() < 1e-15);
        let z = c.operators[0][(0, 0)];
        assert!((z - Complex64::from_polar(1.0, theta)).norm() < 1e-14);
    }

    #[test]
    fn block_structure_halves() {
        let mut j = RMatrix::zeros(4, 4);
        j.view_mut((0, 0), (2, 2)).copy_from(&rot(std::f64::consts::FRAC_PI_2));
        j.view_mut((2, 2), (2, 2)).copy_from(&rot(std::f64::consts::FRAC_PI_2));
        let c = internal_complexify(&[], &j).unwrap();
        assert_eq!(c.dim, 2);
        let v = RVector::from_vec(vec![0.3, -1.0, 2.0, 0.5]);
        assert!(v.dot(&(&j * &v)).abs() < 1e-15);
        assert!((c.from_coords(&c.coords(&v)) - &v).norm() < 1e-14);
    }

    #[test]
    fn complexify_rejects_odd_and_noncommuting() {
        assert!(matches!(
            internal_complexify(&[], &RMatrix::identity(3, 3)),
            Err(Error::Dimension(_))
        ));
        let j = rot(std::f64::consts::FRAC_PI_2);
        let refl = RMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]);
        assert!(matches!(internal_complexify(&[refl], &j), Err(Error::DoesNotCommute { .. })));
    }

    #[test]
    fn right_multiplication_pair_gives_standard_basis() {
        let i_op = right_mult(Quaternion::E1);
        let j_op = right_mult(Quaternion::E2);
        let q = internal_quaternionify(&[], &i_op, &j_op, &Frame::standard()).unwrap();
        assert_eq!(q.dim, 1);
        let b = &q.basis[0];
        let tuple = [b.clone(), &i_op * b, &j_op * b, &j_op * (&i_op * b)];
        for (k, v) in tuple.iter().enumerate() {
            let e = RVector::from_fn(4, |r, _| if r == k { 1.0 } else { 0.0 });
            assert!((v - e).norm() < 1e-15);
        }
        // left multiplications commute with right ones and become quaternion scalars
        let q = internal_quaternionify(&[left_mult(Quaternion::new(0.5, 1.0, -2.0, 0.25))], &i_op, &j_op, &Frame::standard())
            .unwrap();
        assert!((q.operators[0][(0, 0)] - Quaternion::new(0.5, 1.0, -2.0, 0.25)).norm() < 1e-14);
    }

    #[test]
    fn left_multiplication_pair_is_a_right_action() {
        let i_op = left_mult(Quaternion::E1);
        let j_op = left_mult(Quaternion::E2);
        let q = internal_quaternionify(&[], &i_op, &j_op, &Frame::standard()).unwrap();
        let v = RVector::from_vec(vec![0.2, -0.4, 1.1, 0.3]);
        let a = Quaternion::new(0.1, 2.0, -1.0, 0.5);
        let b = Quaternion::new(-0.7, 0.3, 0.9, 1.5);
        let lhs = q.act(&q.act(&v, a), b);
        let rhs = q.act(&v, a * b);
        assert!((lhs - rhs).norm() < 1e-13);
    }

    #[test]
    fn induced_norm_matches_real_norm() {
        let i_op = right_mult(Quaternion::E1);
        let j_op = right_mult(Quaternion::E2);
        let mut big_i = RMatrix::zeros(8, 8);
        let mut big_j = RMatrix::zeros(8, 8);
        for blk in 0..2 {
            big_i.view_mut((4 * blk, 4 * blk), (4, 4)).copy_from(&i_op);
            big_j.view_mut((4 * blk, 4 * blk), (4, 4)).copy_from(&j_op);
        }
        let q = internal_quaternionify(&[], &big_i, &big_j, &Frame::standard()).unwrap();
        assert_eq!(q.dim, 2);
        let v = RVector::from_fn(8, |r, _| (r as f64 * 0.37).sin());
        let ip = q.inner(&v, &v);
        assert!((ip.w - v.norm_squared()).abs() < 1e-14);
        assert!(ip.imag_norm() < 1e-14);
        assert!((q.from_coords(&q.coords(&v)) - &v).norm() < 1e-14);
    }

    #[test]
    fn quaternionify_checks_structure() {
        let i_op = right_mult(Quaternion::E1);
        assert!(matches!(
            internal_quaternionify(&[], &i_op, &i_op, &Frame::standard()),
            Err(Error::Structure { .. })
        ));
        let j = rot(std::f64::consts::FRAC_PI_2);
        let mut six = RMatrix::zeros(6, 6);
        for blk in 0..3 {
            six.view_mut((2 * blk, 2 * blk), (2, 2)).copy_from(&j);
        }
        assert!(matches!(
            internal_quaternionify(&[], &six, &six, &Frame::standard()),
            Err(Error::Dimension(_))
        ));
    }
}
