//! The complex embedding `χ : M_n(H) -> M_2n(C)`.
//!
//! Relative to a frame, every matrix splits entrywise as `T = T1 + T2 j`
//! with `T1, T2` over `C_i`, and
//!
//! ```text
//! χ(T) = [[ T1,        T2      ],
//!         [ -conj(T2), conj(T1) ]]
//! ```
//!
//! This is the matrix of `T` in the `C_i`-linear coordinates
//! `ψ(v) = (v1, -conj(v2))` for `v = v1 + v2 j`, which makes `χ` an injective
//! unital *-homomorphism.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::matrix::QMatrix;
use crate::linalg::vector::QVector;
use crate::quat::{Frame, Quaternion};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;
pub type RMatrix = DMatrix<f64>;
pub type RVector = DVector<f64>;

/// Residual tolerance accepted by [`complex_unembed`].
pub const UNEMBED_TOL: f64 = 1e-10;

/// JSON carrier for complex matrices: `{"n2": int, "re": [[..]], "im": [[..]]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ComplexMatrixWire", into = "ComplexMatrixWire")]
pub struct ComplexMatrix(pub CMatrix);

#[derive(Serialize, Deserialize)]
struct ComplexMatrixWire {
    n2: usize,
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
}

impl TryFrom<ComplexMatrixWire> for ComplexMatrix {
    type Error = Error;
    fn try_from(w: ComplexMatrixWire) -> Result<Self> {
        let n = w.n2;
        let ok = |rows: &Vec<Vec<f64>>| rows.len() == n && rows.iter().all(|r| r.len() == n);
        if !ok(&w.re) || !ok(&w.im) {
            return Err(Error::Dimension(format!("complex matrix blocks must be {n}x{n}")));
        }
        Ok(ComplexMatrix(CMatrix::from_fn(n, n, |r, c| {
            Complex64::new(w.re[r][c], w.im[r][c])
        })))
    }
}

impl From<ComplexMatrix> for ComplexMatrixWire {
    fn from(m: ComplexMatrix) -> Self {
        let m = m.0;
        let n = m.nrows();
        ComplexMatrixWire {
            n2: n,
            re: (0..n).map(|r| (0..n).map(|c| m[(r, c)].re).collect()).collect(),
            im: (0..n).map(|r| (0..n).map(|c| m[(r, c)].im).collect()).collect(),
        }
    }
}

impl From<CMatrix> for ComplexMatrix {
    fn from(m: CMatrix) -> Self {
        ComplexMatrix(m)
    }
}

/// `χ(T)` relative to the frame `f`.
pub fn complex_embed(t: &QMatrix, f: &Frame) -> CMatrix {
    let n = t.n();
    let mut m = CMatrix::zeros(2 * n, 2 * n);
    for r in 0..n {
        for c in 0..n {
            let (z1, z2) = f.split(t[(r, c)]);
            m[(r, c)] = z1;
            m[(r, c + n)] = z2;
            m[(r + n, c)] = -z2.conj();
            m[(r + n, c + n)] = z1.conj();
        }
    }
    m
}

/// Distance of a `2n x 2n` matrix from the image of `χ`.
pub fn embedding_residual(m: &CMatrix) -> f64 {
    let n = m.nrows() / 2;
    let mut r2 = 0.0;
    for r in 0..n {
        for c in 0..n {
            r2 += (m[(r + n, c + n)] - m[(r, c)].conj()).norm_sqr();
            r2 += (m[(r + n, c)] + m[(r, c + n)].conj()).norm_sqr();
        }
    }
    r2.sqrt()
}

/// Left inverse of [`complex_embed`]. Fails with `NotInImage` when the block
/// symmetry is violated by more than [`UNEMBED_TOL`] (relative to the
/// largest entry once that exceeds one).
pub fn complex_unembed(m: &CMatrix, f: &Frame) -> Result<QMatrix> {
    if !m.is_square() || m.nrows() % 2 != 0 {
        return Err(Error::Dimension(format!(
            "complex carrier must be square of even size, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    let residual = embedding_residual(m);
    let scale = m.iter().map(|z| z.norm()).fold(1.0, f64::max);
    if residual.is_nan() || residual > UNEMBED_TOL * scale {
        return Err(Error::NotInImage { residual });
    }
    let n = m.nrows() / 2;
    Ok(QMatrix::from_fn(n, |r, c| {
        // average the two redundant copies of each block
        let z1 = (m[(r, c)] + m[(r + n, c + n)].conj()) * 0.5;
        let z2 = (m[(r, c + n)] - m[(r + n, c)].conj()) * 0.5;
        f.join(z1, z2)
    }))
}

/// `ψ(v) = (v1, -conj(v2))` for `v = v1 + v2 j`; satisfies `χ(T) ψ(v) = ψ(T v)`.
pub fn embed_vector(v: &QVector, f: &Frame) -> CVector {
    let n = v.len();
    let mut out = CVector::zeros(2 * n);
    for m in 0..n {
        let (z1, z2) = f.split(v[m]);
        out[m] = z1;
        out[m + n] = -z2.conj();
    }
    out
}

/// Inverse of [`embed_vector`].
pub fn unembed_vector(w: &CVector, f: &Frame) -> QVector {
    let n = w.len() / 2;
    QVector::new((0..n).map(|m| f.join(w[m], -w[m + n].conj())).collect())
}

/// 4x4 real matrix of left multiplication by `q` on `(w, x, y, z)` coordinates.
pub fn left_mult_matrix(q: Quaternion) -> [[f64; 4]; 4] {
    let basis = [Quaternion::ONE, Quaternion::E1, Quaternion::E2, Quaternion::E3];
    let mut out = [[0.0; 4]; 4];
    for (c, b) in basis.iter().enumerate() {
        let p: [f64; 4] = (q * *b).into();
        for r in 0..4 {
            out[r][c] = p[r];
        }
    }
    out
}

/// 4x4 real matrix of right multiplication by `q`.
pub fn right_mult_matrix(q: Quaternion) -> [[f64; 4]; 4] {
    let basis = [Quaternion::ONE, Quaternion::E1, Quaternion::E2, Quaternion::E3];
    let mut out = [[0.0; 4]; 4];
    for (c, b) in basis.iter().enumerate() {
        let p: [f64; 4] = (*b * q).into();
        for r in 0..4 {
            out[r][c] = p[r];
        }
    }
    out
}

/// Block-diagonal `4n x 4n` matrix of `v ↦ v q` on `R^{4n}`.
pub fn real_right_mult(n: usize, q: Quaternion) -> RMatrix {
    let l = right_mult_matrix(q);
    let mut out = RMatrix::zeros(4 * n, 4 * n);
    for m in 0..n {
        for a in 0..4 {
            for b in 0..4 {
                out[(4 * m + a, 4 * m + b)] = l[a][b];
            }
        }
    }
    out
}

/// The `4n x 4n` real matrix of `T` acting on `R^{4n}` (see [`QVector::to_real`]).
pub fn real_embed(t: &QMatrix) -> RMatrix {
    let n = t.n();
    let mut out = RMatrix::zeros(4 * n, 4 * n);
    for r in 0..n {
        for c in 0..n {
            let l = left_mult_matrix(t[(r, c)]);
            for a in 0..4 {
                for b in 0..4 {
                    out[(4 * r + a, 4 * c + b)] = l[a][b];
                }
            }
        }
    }
    out
}

/// Complex matrix reinterpreted over `C_i` as a quaternionic matrix.
pub fn quaternionify_complex(m: &CMatrix, f: &Frame) -> Result<QMatrix> {
    if !m.is_square() {
        return Err(Error::Dimension("complex matrix must be square".into()));
    }
    Ok(QMatrix::from_fn(m.nrows(), |r, c| f.complex(m[(r, c)])))
}

pub fn complexify_real(m: &RMatrix) -> CMatrix {
    m.map(|x| Complex64::new(x, 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quat::{frame_complete, ImaginaryUnit};

    #[test]
    fn identity_maps_to_identity() {
        let f = Frame::standard();
        assert_eq!(complex_embed(&QMatrix::identity(3), &f), CMatrix::identity(6, 6));
    }

    #[test]
    fn j_scalar_block() {
        let f = Frame::standard();
        let m = complex_embed(&QMatrix::scalar(1, Quaternion::E2), &f);
        let expected = CMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(0.0, 0.0),
                Complex64::new(1.0, 0.0),
                Complex64::new(-1.0, 0.0),
                Complex64::new(0.0, 0.0),
            ],
        );
        assert_eq!(m, expected);
        let back = complex_unembed(&expected, &f).unwrap();
        assert_eq!(back, QMatrix::scalar(1, Quaternion::E2));
    }

    #[test]
    fn not_in_image() {
        let m = CMatrix::from_diagonal(&CVector::from_vec(vec![
            Complex64::new(1.0, 0.0),
            Complex64::new(2.0, 0.0),
        ]));
        match complex_unembed(&m, &Frame::standard()) {
            Err(Error::NotInImage { residual }) => assert!((residual - 1.0).abs() < 1e-15),
            other => panic!("expected NotInImage, got {other:?}"),
        }
    }

    #[test]
    fn vector_embedding_intertwines() {
        let f = frame_complete(ImaginaryUnit::normalized([0.3, -1.0, 0.4]).unwrap());
        let t = QMatrix::from_fn(2, |r, c| Quaternion::new(r as f64 - 0.5, 1.0 + c as f64, 0.25, -0.75 * r as f64));
        let v = QVector::new(vec![Quaternion::new(1.0, -2.0, 0.5, 0.1), Quaternion::new(0.0, 0.3, -0.2, 1.0)]);
        let lhs = complex_embed(&t, &f) * embed_vector(&v, &f);
        let rhs = embed_vector(&t.apply(&v), &f);
        assert!((lhs - rhs).norm() < 1e-13);
        let back = unembed_vector(&embed_vector(&v, &f), &f);
        assert!((&back - &v).norm() < 1e-15);
    }

    #[test]
    fn real_embedding_matches_action() {
        let t = QMatrix::from_fn(2, |r, c| Quaternion::new(1.0 + r as f64, c as f64, -0.5, 0.25));
        let v = QVector::new(vec![Quaternion::new(1.0, -2.0, 0.5, 0.1), Quaternion::new(0.0, 0.3, -0.2, 1.0)]);
        let lhs = real_embed(&t) * RVector::from_vec(v.to_real());
        let rhs = t.apply(&v).to_real();
        for (a, b) in lhs.iter().zip(&rhs) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn complex_matrix_json() {
        let m = ComplexMatrix(CMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(1.0, 0.5),
                Complex64::new(0.0, -1.0),
                Complex64::new(2.0, 0.0),
                Complex64::new(0.0, 0.0),
            ],
        ));
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"n2":2,"re":[[1.0,0.0],[2.0,0.0]],"im":[[0.5,-1.0],[0.0,0.0]]}"#);
        assert_eq!(serde_json::from_str::<ComplexMatrix>(&s).unwrap(), m);
    }
}
