use serde::{Deserialize, Serialize};

use crate::linalg::embed::{CMatrix, RMatrix};
use crate::linalg::matrix::QMatrix;

/// Default relative tolerance for [`classify_operator`].
pub const FLAG_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct OperatorFlags {
    pub selfadjoint: bool,
    pub antiselfadjoint: bool,
    pub unitary: bool,
    pub normal: bool,
    pub projection: bool,
}

/// Raw residuals behind [`OperatorFlags`], all Frobenius norms.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct FlagResiduals {
    pub selfadjoint: f64,
    pub antiselfadjoint: f64,
    pub unitary: f64,
    pub normal: f64,
    pub projection: f64,
}

/// Operators the flag computation can run on.
trait FlagOperand: Sized {
    fn adj(&self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn fro(&self) -> f64;
    fn ident(&self) -> Self;
}

impl FlagOperand for QMatrix {
    fn adj(&self) -> Self {
        self.adjoint()
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn fro(&self) -> f64 {
        self.fro_norm()
    }
    fn ident(&self) -> Self {
        QMatrix::identity(self.n())
    }
}

impl FlagOperand for CMatrix {
    fn adj(&self) -> Self {
        self.adjoint()
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn fro(&self) -> f64 {
        self.norm()
    }
    fn ident(&self) -> Self {
        CMatrix::identity(self.nrows(), self.ncols())
    }
}

impl FlagOperand for RMatrix {
    fn adj(&self) -> Self {
        self.transpose()
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn fro(&self) -> f64 {
        self.norm()
    }
    fn ident(&self) -> Self {
        RMatrix::identity(self.nrows(), self.ncols())
    }
}

fn residuals<T: FlagOperand>(t: &T) -> FlagResiduals {
    let ts = t.adj();
    let tst = ts.mul(t);
    FlagResiduals {
        selfadjoint: t.sub(&ts).fro(),
        antiselfadjoint: t.add(&ts).fro(),
        unitary: tst.sub(&t.ident()).fro(),
        normal: t.mul(&ts).sub(&tst).fro(),
        projection: t.mul(t).sub(t).fro() + t.sub(&ts).fro(),
    }
}

fn flags<T: FlagOperand>(t: &T, tol: f64) -> (OperatorFlags, FlagResiduals) {
    let r = residuals(t);
    let s = t.fro().max(1.0);
    let id = t.ident().fro().max(1.0);
    let f = OperatorFlags {
        selfadjoint: r.selfadjoint <= tol * s,
        antiselfadjoint: r.antiselfadjoint <= tol * s,
        unitary: r.unitary <= tol * id,
        normal: r.normal <= tol * s * s,
        projection: r.projection <= tol * s,
    };
    (f, r)
}

/// Structural flags of a quaternionic operator with relative tolerance `tol`.
pub fn classify_operator(t: &QMatrix, tol: f64) -> OperatorFlags {
    flags(t, tol).0
}

pub fn classify_operator_residuals(t: &QMatrix, tol: f64) -> (OperatorFlags, FlagResiduals) {
    flags(t, tol)
}

pub fn classify_complex(m: &CMatrix, tol: f64) -> OperatorFlags {
    flags(m, tol).0
}

pub fn classify_real(m: &RMatrix, tol: f64) -> OperatorFlags {
    flags(m, tol).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::outer;
    use crate::linalg::vector::QVector;
    use crate::quat::Quaternion;

    #[test]
    fn identity_flags() {
        let f = classify_operator(&QMatrix::identity(3), FLAG_TOL);
        assert_eq!(
            f,
            OperatorFlags {
                selfadjoint: true,
                antiselfadjoint: false,
                unitary: true,
                normal: true,
                projection: true
            }
        );
    }

    #[test]
    fn imaginary_unit_flags() {
        let f = classify_operator(&QMatrix::scalar(3, Quaternion::E1), FLAG_TOL);
        assert_eq!(
            f,
            OperatorFlags {
                selfadjoint: false,
                antiselfadjoint: true,
                unitary: true,
                normal: true,
                projection: false
            }
        );
    }

    #[test]
    fn rank_one_projection_flags() {
        let v = QVector::new(vec![
            Quaternion::new(0.5, 0.5, 0.0, 0.0),
            Quaternion::new(0.0, 0.0, 0.5, -0.5),
        ]);
        assert!((v.norm() - 1.0).abs() < 1e-15);
        let p = outer(&v, &v);
        let f = classify_operator(&p, FLAG_TOL);
        assert_eq!(
            f,
            OperatorFlags {
                selfadjoint: true,
                antiselfadjoint: false,
                unitary: false,
                normal: true,
                projection: true
            }
        );
    }

    #[test]
    fn real_rotation_flags() {
        let m = RMatrix::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0]);
        let f = classify_real(&m, FLAG_TOL);
        assert!(f.antiselfadjoint && f.unitary && f.normal && !f.selfadjoint && !f.projection);
    }
}
