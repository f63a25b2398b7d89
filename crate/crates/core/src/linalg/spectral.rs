//! Spectral computations. Everything goes through the complex embedding;
//! the block symmetry of `χ(T)` guarantees that eigenvalues come in
//! conjugate pairs, one pair per quaternionic spectral sphere.

use nalgebra::SymmetricEigen;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::embed::{complex_embed, complex_unembed, CMatrix, RMatrix};
use crate::linalg::matrix::QMatrix;
use crate::linalg::svd::{complex_singular_values, real_singular_values};
use crate::quat::{frame_complete, Frame, ImaginaryUnit, Quaternion};

/// Normality threshold: `‖TT* - T*T‖ <= NORMAL_TOL ‖T‖²`.
pub const NORMAL_TOL: f64 = 1e-9;
/// Eigenvalues closer than this (scaled by `max(1, ‖T‖)`) share a sphere.
pub const PAIRING_TOL: f64 = 1e-8;

/// Eigen-decomposition of the Hermitian part of `m`, eigenvalues ascending.
pub fn hermitian_eigen(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let h = (m + m.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = SymmetricEigen::new(h);
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = CMatrix::from_fn(m.nrows(), order.len(), |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

/// Eigenvalues of a normal complex matrix.
///
/// Diagonalizes the Hermitian pencil `Re M + α Im M` (which shares its
/// eigenvectors with `M`) and reads off Rayleigh quotients. A second shift
/// is tried if the first one leaves a residual.
pub fn normal_eigenvalues(m: &CMatrix) -> Vec<Complex64> {
    let half = Complex64::new(0.5, 0.0);
    let re_part = (m + m.adjoint()) * half;
    let im_part = (m - m.adjoint()) * Complex64::new(0.0, -0.5);
    let scale = m.norm().max(1e-300);
    let mut best: Option<(f64, Vec<Complex64>)> = None;
    for alpha in [0.577_215_664_901_532_9, 1.324_717_957_244_746, -0.414_213_562_373_095_1] {
        let pencil = &re_part + &im_part * Complex64::new(alpha, 0.0);
        let (_, w) = hermitian_eigen(&pencil);
        let lambdas: Vec<Complex64> = (0..w.ncols())
            .map(|k| {
                let col = w.column(k);
                (col.adjoint() * m * col)[(0, 0)]
            })
            .collect();
        let diag = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(lambdas.clone()));
        let residual = (m * &w - &w * diag).norm() / scale;
        if residual < 1e-10 {
            return lambdas;
        }
        if best.as_ref().map_or(true, |(r, _)| residual < *r) {
            best = Some((residual, lambdas));
        }
    }
    best.map(|(_, l)| l).unwrap_or_default()
}

pub fn complex_operator_norm(m: &CMatrix) -> f64 {
    complex_singular_values(m).first().copied().unwrap_or(0.0)
}

pub fn real_operator_norm(m: &RMatrix) -> f64 {
    real_singular_values(m).first().copied().unwrap_or(0.0)
}

/// Operator norm of `T`: the largest singular value of `χ(T)`.
pub fn operator_norm(t: &QMatrix) -> f64 {
    complex_operator_norm(&complex_embed(t, &Frame::standard()))
}

/// One spectral sphere: its representative in the closed upper half of
/// `C_i` and its quaternionic multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigenSphere {
    pub representative: Quaternion,
    pub multiplicity: usize,
}

pub fn normality_residual(t: &QMatrix) -> f64 {
    let ts = t.adjoint();
    (&(t * &ts) - &(&ts * t)).fro_norm()
}

/// Spectral spheres of a normal operator, sorted by representative.
pub fn s_eigenspheres(t: &QMatrix, i: ImaginaryUnit) -> Result<Vec<EigenSphere>> {
    let f = frame_complete(i);
    let chi = complex_embed(t, &f);
    let norm = complex_operator_norm(&chi);
    let residual = normality_residual(t);
    if residual > NORMAL_TOL * norm * norm {
        return Err(Error::NotNormal { residual });
    }
    let lambdas = normal_eigenvalues(&chi);
    group_spheres(&lambdas, PAIRING_TOL * norm.max(1.0), i)
}

fn group_spheres(lambdas: &[Complex64], tol: f64, i: ImaginaryUnit) -> Result<Vec<EigenSphere>> {
    let reps: Vec<Complex64> = lambdas
        .iter()
        .map(|l| Complex64::new(l.re, l.im.abs()))
        .collect();
    let mut taken = vec![false; reps.len()];
    let mut spheres = Vec::new();
    let mut order: Vec<usize> = (0..reps.len()).collect();
    order.sort_by(|&a, &b| {
        reps[a]
            .re
            .total_cmp(&reps[b].re)
            .then(reps[a].im.total_cmp(&reps[b].im))
    });
    for &seed in &order {
        if taken[seed] {
            continue;
        }
        let members: Vec<usize> = order
            .iter()
            .copied()
            .filter(|&k| !taken[k] && (reps[k] - reps[seed]).norm() <= tol)
            .collect();
        for &k in &members {
            taken[k] = true;
        }
        if members.len() % 2 != 0 {
            return Err(Error::InternalInconsistency(format!(
                "eigenvalue cluster near {} has odd size {}; conjugate pairing failed",
                reps[seed],
                members.len()
            )));
        }
        let mean = members.iter().map(|&k| reps[k]).sum::<Complex64>() / members.len() as f64;
        spheres.push(EigenSphere {
            representative: i.complex(mean),
            multiplicity: members.len() / 2,
        });
    }
    Ok(spheres)
}

/// Spectral projection of a selfadjoint `T` onto the eigenvalues accepted
/// by `select`.
pub fn spectral_projection(t: &QMatrix, select: impl Fn(f64) -> bool) -> Result<QMatrix> {
    let f = Frame::standard();
    let chi = complex_embed(t, &f);
    let (values, vectors) = hermitian_eigen(&chi);
    let dim = chi.nrows();
    let mut p = CMatrix::zeros(dim, dim);
    for (k, &v) in values.iter().enumerate() {
        if select(v) {
            let col = vectors.column(k);
            p += col * col.adjoint();
        }
    }
    complex_unembed(&p, &f)
}

/// Real eigenvalues of a selfadjoint `T`, each listed once per quaternionic
/// multiplicity (the doubled spectrum of `χ(T)` taken pairwise).
pub fn selfadjoint_eigenvalues(t: &QMatrix) -> Vec<f64> {
    let (values, _) = hermitian_eigen(&complex_embed(t, &Frame::standard()));
    values.chunks(2).map(|c| 0.5 * (c[0] + c[c.len() - 1])).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::embed::real_embed;

    #[test]
    fn identity_sphere() {
        let s = s_eigenspheres(&QMatrix::identity(3), ImaginaryUnit::E1).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].multiplicity, 3);
        assert!((s[0].representative - Quaternion::ONE).norm() < 1e-14);
    }

    #[test]
    fn imaginary_scalar_sphere() {
        let s = s_eigenspheres(&QMatrix::diag(&[Quaternion::E1]), ImaginaryUnit::E1).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].multiplicity, 1);
        assert!((s[0].representative - Quaternion::E1).norm() < 1e-14);
        // in another slice the representative moves there
        let s = s_eigenspheres(&QMatrix::diag(&[Quaternion::E1]), ImaginaryUnit::E3).unwrap();
        assert!((s[0].representative - Quaternion::E3).norm() < 1e-14);
    }

    #[test]
    fn real_symmetric_swap() {
        let t = QMatrix::from_fn(2, |r, c| Quaternion::real(if r == c { 0.0 } else { 1.0 }));
        let s = s_eigenspheres(&t, ImaginaryUnit::E1).unwrap();
        // oracle: real symmetric [[0,1],[1,0]] has eigenvalues -1, 1
        let oracle = nalgebra::SymmetricEigen::new(nalgebra::DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]));
        let mut ev: Vec<f64> = oracle.eigenvalues.iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        assert_eq!(s.len(), 2);
        for (sphere, e) in s.iter().zip(ev) {
            assert_eq!(sphere.multiplicity, 1);
            assert!((sphere.representative - Quaternion::real(e)).norm() < 1e-12);
        }
    }

    #[test]
    fn rejects_non_normal() {
        let t = QMatrix::from_fn(2, |r, c| Quaternion::real(if r == 0 && c == 1 { 1.0 } else { 0.0 }));
        assert!(matches!(s_eigenspheres(&t, ImaginaryUnit::E1), Err(Error::NotNormal { .. })));
    }

    #[test]
    fn selfadjoint_matches_real_embedding() {
        let b = QMatrix::from_fn(3, |r, c| {
            Quaternion::new((r * 3 + c) as f64 * 0.1 - 0.4, 0.3 * r as f64 - 0.2 * c as f64, 0.5, -0.1 * (r + c) as f64)
        });
        let t = (&b + &b.adjoint()).scale(0.5);
        let ev = selfadjoint_eigenvalues(&t);
        let real = nalgebra::SymmetricEigen::new(real_embed(&t));
        let mut rv: Vec<f64> = real.eigenvalues.iter().copied().collect();
        rv.sort_by(f64::total_cmp);
        // each quaternionic eigenvalue appears four times in the real picture
        for (k, e) in ev.iter().enumerate() {
            for d in 0..4 {
                assert!((rv[4 * k + d] - e).abs() < 1e-9);
            }
        }
    }
}
