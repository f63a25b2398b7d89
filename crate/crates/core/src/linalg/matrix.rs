use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::vector::QVector;
use crate::quat::Quaternion;

/// An `n x n` quaternionic matrix acting on column vectors from the left,
/// `(T v)_m = Σ_n T_mn v_n`. Such an action commutes with right scalar
/// multiplication, so every `QMatrix` is a right-linear operator on `H^n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "QMatrixWire", into = "QMatrixWire")]
pub struct QMatrix {
    n: usize,
    data: Vec<Quaternion>,
}

#[derive(Serialize, Deserialize)]
struct QMatrixWire {
    n: usize,
    entries: Vec<Vec<Quaternion>>,
}

impl TryFrom<QMatrixWire> for QMatrix {
    type Error = Error;
    fn try_from(w: QMatrixWire) -> Result<Self> {
        let m = QMatrix::from_rows(w.entries)?;
        if m.n != w.n {
            return Err(Error::Dimension(format!(
                "declared n = {} but entries have {} rows",
                w.n, m.n
            )));
        }
        Ok(m)
    }
}

impl From<QMatrix> for QMatrixWire {
    fn from(m: QMatrix) -> Self {
        QMatrixWire {
            n: m.n,
            entries: m.rows(),
        }
    }
}

impl QMatrix {
    pub fn zeros(n: usize) -> Self {
        QMatrix {
            n,
            data: vec![Quaternion::ZERO; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        QMatrix::scalar(n, Quaternion::ONE)
    }

    /// `q I`, i.e. left multiplication by `q` in the standard basis.
    pub fn scalar(n: usize, q: Quaternion) -> Self {
        let mut m = QMatrix::zeros(n);
        for k in 0..n {
            m[(k, k)] = q;
        }
        m
    }

    pub fn diag(d: &[Quaternion]) -> Self {
        let mut m = QMatrix::zeros(d.len());
        for (k, &q) in d.iter().enumerate() {
            m[(k, k)] = q;
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Quaternion) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                data.push(f(r, c));
            }
        }
        QMatrix { n, data }
    }

    pub fn from_rows(rows: Vec<Vec<Quaternion>>) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::Dimension(format!(
                "matrix must be square: {} rows but a row of length {}",
                n,
                bad.len()
            )));
        }
        Ok(QMatrix {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Matrix whose `c`-th column is `cols[c]`.
    pub fn from_columns(cols: &[QVector]) -> Result<Self> {
        let n = cols.len();
        if cols.iter().any(|c| c.len() != n) {
            return Err(Error::Dimension("columns must have length equal to their count".into()));
        }
        Ok(QMatrix::from_fn(n, |r, c| cols[c][r]))
    }

    /// Real matrix reinterpreted with quaternionic entries.
    pub fn from_real(m: &nalgebra::DMatrix<f64>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::Dimension("real matrix must be square".into()));
        }
        Ok(QMatrix::from_fn(m.nrows(), |r, c| Quaternion::real(m[(r, c)])))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> Vec<Vec<Quaternion>> {
        self.data.chunks(self.n.max(1)).take(self.n).map(<[_]>::to_vec).collect()
    }

    pub fn column(&self, c: usize) -> QVector {
        QVector::new((0..self.n).map(|r| self[(r, c)]).collect())
    }

    pub fn columns(&self) -> Vec<QVector> {
        (0..self.n).map(|c| self.column(c)).collect()
    }

    /// Conjugate transpose `(T*)_mn = conj(T_nm)`.
    pub fn adjoint(&self) -> QMatrix {
        QMatrix::from_fn(self.n, |r, c| self[(c, r)].conj())
    }

    pub fn apply(&self, v: &QVector) -> QVector {
        assert_eq!(v.len(), self.n, "operator/vector dimension mismatch");
        QVector::new(
            (0..self.n)
                .map(|r| {
                    (0..self.n).fold(Quaternion::ZERO, |acc, c| acc + self[(r, c)] * v[c])
                })
                .collect(),
        )
    }

    pub fn scale(&self, s: f64) -> QMatrix {
        QMatrix {
            n: self.n,
            data: self.data.iter().map(|&q| q * s).collect(),
        }
    }

    /// Entrywise right multiplication `T_mn a`.
    pub fn mul_right_scalar(&self, a: Quaternion) -> QMatrix {
        QMatrix {
            n: self.n,
            data: self.data.iter().map(|&q| q * a).collect(),
        }
    }

    /// Entrywise left multiplication `a T_mn`.
    pub fn mul_left_scalar(&self, a: Quaternion) -> QMatrix {
        QMatrix {
            n: self.n,
            data: self.data.iter().map(|&q| a * q).collect(),
        }
    }

    pub fn fro_norm_sqr(&self) -> f64 {
        self.data.iter().map(Quaternion::norm_sqr).sum()
    }

    pub fn fro_norm(&self) -> f64 {
        self.fro_norm_sqr().sqrt()
    }

    pub fn trace(&self) -> Quaternion {
        (0..self.n).fold(Quaternion::ZERO, |acc, k| acc + self[(k, k)])
    }

    /// `[self, other] = self other - other self`.
    pub fn commutator(&self, other: &QMatrix) -> QMatrix {
        &(self * other) - &(other * self)
    }

    pub fn anticommutator(&self, other: &QMatrix) -> QMatrix {
        &(self * other) + &(other * self)
    }

    /// Real trace form `Re tr(self* other)`, the Euclidean product on `R^{4n²}`.
    pub fn real_dot(&self, other: &QMatrix) -> f64 {
        self.data.iter().zip(&other.data).map(|(a, b)| a.dot(b)).sum()
    }

    /// Coordinates on `R^{4n²}`: row-major entries, `(w, x, y, z)` each.
    pub fn to_real_vec(&self) -> Vec<f64> {
        self.data.iter().flat_map(|q| [q.w, q.x, q.y, q.z]).collect()
    }

    pub fn from_real_vec(n: usize, v: &[f64]) -> QMatrix {
        assert_eq!(v.len(), 4 * n * n, "real vector length must be 4n²");
        QMatrix {
            n,
            data: v
                .chunks_exact(4)
                .map(|c| Quaternion::new(c[0], c[1], c[2], c[3]))
                .collect(),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(Quaternion::is_finite)
    }

    pub fn entries(&self) -> &[Quaternion] {
        &self.data
    }
}

impl Index<(usize, usize)> for QMatrix {
    type Output = Quaternion;
    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &Quaternion {
        &self.data[r * self.n + c]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Quaternion {
        &mut self.data[r * self.n + c]
    }
}

impl Mul for &QMatrix {
    type Output = QMatrix;
    fn mul(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!(self.n, rhs.n, "matrix dimension mismatch");
        let n = self.n;
        let mut out = QMatrix::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self[(r, k)];
                if a == Quaternion::ZERO {
                    continue;
                }
                for c in 0..n {
                    out.data[r * n + c] += a * rhs.data[k * n + c];
                }
            }
        }
        out
    }
}

impl Mul<&QVector> for &QMatrix {
    type Output = QVector;
    fn mul(self, v: &QVector) -> QVector {
        self.apply(v)
    }
}

impl Add for &QMatrix {
    type Output = QMatrix;
    fn add(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!(self.n, rhs.n, "matrix dimension mismatch");
        QMatrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| a + b).collect(),
        }
    }
}

impl Sub for &QMatrix {
    type Output = QMatrix;
    fn sub(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!(self.n, rhs.n, "matrix dimension mismatch");
        QMatrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| a - b).collect(),
        }
    }
}

impl Neg for &QMatrix {
    type Output = QMatrix;
    fn neg(self) -> QMatrix {
        self.scale(-1.0)
    }
}

/// Conjugate transpose.
pub fn adjoint(t: &QMatrix) -> QMatrix {
    t.adjoint()
}

/// Rank-one operator `u ⟨v, ·⟩`.
pub fn outer(u: &QVector, v: &QVector) -> QMatrix {
    assert_eq!(u.len(), v.len());
    QMatrix::from_fn(u.len(), |r, c| u[r] * v[c].conj())
}
