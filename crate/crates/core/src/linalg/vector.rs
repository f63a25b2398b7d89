use std::ops::{Add, Index, IndexMut, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quat::Quaternion;

/// A column vector in `H^n`. Scalars act from the right.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct QVector {
    entries: Vec<Quaternion>,
}

impl QVector {
    pub fn new(entries: Vec<Quaternion>) -> Self {
        QVector { entries }
    }

    pub fn zeros(n: usize) -> Self {
        QVector {
            entries: vec![Quaternion::ZERO; n],
        }
    }

    /// Standard basis vector `δ_m`.
    pub fn basis(n: usize, m: usize) -> Self {
        let mut v = QVector::zeros(n);
        v.entries[m] = Quaternion::ONE;
        v
    }

    pub fn from_real(values: &[f64]) -> Self {
        QVector {
            entries: values.iter().map(|&r| Quaternion::real(r)).collect(),
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Quaternion] {
        &self.entries
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Quaternion> {
        self.entries.iter()
    }

    /// Right scalar multiplication `(v a)_m = v_m a`.
    pub fn mul_right(&self, a: Quaternion) -> QVector {
        QVector {
            entries: self.entries.iter().map(|&v| v * a).collect(),
        }
    }

    /// Left scalar multiplication `(a v)_m = a v_m` in the standard basis.
    pub fn mul_left(&self, a: Quaternion) -> QVector {
        QVector {
            entries: self.entries.iter().map(|&v| a * v).collect(),
        }
    }

    pub fn scale(&self, s: f64) -> QVector {
        QVector {
            entries: self.entries.iter().map(|&v| v * s).collect(),
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.entries.iter().map(Quaternion::norm_sqr).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// `v / ‖v‖`; `None` for the zero vector.
    pub fn normalized(&self) -> Option<QVector> {
        let n = self.norm();
        (n > 0.0).then(|| self.scale(1.0 / n))
    }

    /// Real inner product `Re⟨self, other⟩`, the Euclidean product on `R^{4n}`.
    pub fn real_dot(&self, other: &QVector) -> f64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.dot(b))
            .sum()
    }

    /// Coefficients on `R^{4n}` in `(w, x, y, z)` order per entry.
    pub fn to_real(&self) -> Vec<f64> {
        self.entries
            .iter()
            .flat_map(|q| [q.w, q.x, q.y, q.z])
            .collect()
    }

    pub fn from_real_coords(values: &[f64]) -> QVector {
        assert!(values.len() % 4 == 0, "real coordinate length must be a multiple of 4");
        QVector {
            entries: values
                .chunks_exact(4)
                .map(|c| Quaternion::new(c[0], c[1], c[2], c[3]))
                .collect(),
        }
    }
}

impl Index<usize> for QVector {
    type Output = Quaternion;
    fn index(&self, m: usize) -> &Quaternion {
        &self.entries[m]
    }
}

impl IndexMut<usize> for QVector {
    fn index_mut(&mut self, m: usize) -> &mut Quaternion {
        &mut self.entries[m]
    }
}

impl Add for &QVector {
    type Output = QVector;
    fn add(self, rhs: &QVector) -> QVector {
        assert_eq!(self.len(), rhs.len(), "vector length mismatch");
        QVector {
            entries: self.entries.iter().zip(&rhs.entries).map(|(&a, &b)| a + b).collect(),
        }
    }
}

impl Sub for &QVector {
    type Output = QVector;
    fn sub(self, rhs: &QVector) -> QVector {
        assert_eq!(self.len(), rhs.len(), "vector length mismatch");
        QVector {
            entries: self.entries.iter().zip(&rhs.entries).map(|(&a, &b)| a - b).collect(),
        }
    }
}

impl Neg for &QVector {
    type Output = QVector;
    fn neg(self) -> QVector {
        self.scale(-1.0)
    }
}

/// Quaternionic inner product `⟨v, u⟩ = Σ conj(v_m) u_m`.
///
/// Conjugate-linear in the first slot and right-linear in the second:
/// `⟨v a, u b⟩ = conj(a) ⟨v, u⟩ b`.
pub fn inner(v: &QVector, u: &QVector) -> Result<Quaternion> {
    if v.len() != u.len() {
        return Err(Error::Dimension(format!(
            "inner product of vectors with lengths {} and {}",
            v.len(),
            u.len()
        )));
    }
    Ok(inner_unchecked(v, u))
}

pub(crate) fn inner_unchecked(v: &QVector, u: &QVector) -> Quaternion {
    v.entries
        .iter()
        .zip(&u.entries)
        .fold(Quaternion::ZERO, |acc, (&a, &b)| acc + a.conj() * b)
}

/// Quaternionic Gram–Schmidt with pivoting.
///
/// Repeatedly picks the candidate with the largest residual against the
/// current orthonormal set; stops when `limit` vectors are found or every
/// residual is at most `rank_tol` times the largest candidate norm. The
/// projections use quaternionic coefficients `b ⟨b, v⟩`.
pub(crate) fn gram_schmidt_pivoted(
    candidates: &[QVector],
    limit: usize,
    rank_tol: f64,
) -> Vec<QVector> {
    let scale = candidates.iter().map(QVector::norm).fold(0.0, f64::max);
    let mut residuals: Vec<QVector> = candidates.to_vec();
    let mut basis: Vec<QVector> = Vec::new();
    if scale == 0.0 {
        return basis;
    }
    while basis.len() < limit {
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
        let mut b = residuals[best].scale(1.0 / best_norm);
        // re-orthogonalize once against the accepted set
        for prev in &basis {
            let c = inner_unchecked(prev, &b);
            b = &b - &prev.mul_right(c);
        }
        let b = b.normalized().expect("pivot residual is nonzero");
        for r in residuals.iter_mut() {
            let c = inner_unchecked(&b, r);
            *r = &*r - &b.mul_right(c);
        }
        basis.push(b);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_basis_orthonormal() {
        for m in 0..3 {
            for n in 0..3 {
                let ip = inner(&QVector::basis(3, m), &QVector::basis(3, n)).unwrap();
                let expected = if m == n { Quaternion::ONE } else { Quaternion::ZERO };
                assert_eq!(ip, expected);
            }
        }
    }

    #[test]
    fn hand_expanded_inner() {
        let v = QVector::new(vec![Quaternion::ONE, Quaternion::E1]);
        let u = QVector::new(vec![Quaternion::E2, Quaternion::ONE]);
        // conj(1) e2 + conj(e1) 1 = e2 - e1
        assert_eq!(inner(&v, &u).unwrap(), Quaternion::E2 - Quaternion::E1);
    }

    #[test]
    fn length_mismatch() {
        let err = inner(&QVector::zeros(2), &QVector::zeros(3)).unwrap_err();
        assert!(matches!(err, Error::Dimension(_)));
    }

    #[test]
    fn sesquilinear() {
        let v = QVector::new(vec![Quaternion::new(0.3, -1.0, 2.0, 0.5), Quaternion::new(1.0, 0.0, -0.7, 0.2)]);
        let u = QVector::new(vec![Quaternion::new(-0.1, 0.4, 0.0, 1.5), Quaternion::new(2.0, 1.0, 1.0, -1.0)]);
        let a = Quaternion::new(0.5, 1.0, -2.0, 0.25);
        let b = Quaternion::new(-1.0, 0.3, 0.7, 2.0);
        let lhs = inner(&v.mul_right(a), &u.mul_right(b)).unwrap();
        let rhs = a.conj() * inner(&v, &u).unwrap() * b;
        assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn gram_schmidt_spans() {
        let c = vec![
            QVector::new(vec![Quaternion::ONE, Quaternion::E1]),
            QVector::new(vec![Quaternion::E1, Quaternion::real(-1.0)]),
            QVector::new(vec![Quaternion::E2, Quaternion::ZERO]),
        ];
        // second candidate is the first times e1 on the right: rank 2 over H
        let b = gram_schmidt_pivoted(&c, 2, 1e-10);
        assert_eq!(b.len(), 2);
        let ip = inner(&b[0], &b[1]).unwrap();
        assert!(ip.norm() < 1e-14);
    }
}
