use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::embed::{complex_embed, complex_unembed, CMatrix};
use crate::linalg::matrix::{outer, QMatrix};
use crate::linalg::spectral::{hermitian_eigen, selfadjoint_eigenvalues};
use crate::linalg::vector::{gram_schmidt_pivoted, QVector};
use crate::quat::Frame;

/// Accepted anti-selfadjointness residual, relative to `max(1, ‖A‖_F)`.
pub const ANTI_SELFADJOINT_TOL: f64 = 1e-10;
/// Eigenvalues of `|A|` below this fraction of `‖A‖` count as kernel.
pub const KERNEL_TOL: f64 = 1e-10;

/// `A = J |A|` for an anti-selfadjoint `A`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolarDecomposition {
    /// Unitary, anti-selfadjoint factor.
    pub j: QMatrix,
    /// `|A|`, selfadjoint and positive semidefinite.
    pub modulus: QMatrix,
    /// Quaternionic dimension of `ker A`.
    pub kernel_dim: usize,
}

pub fn antiselfadjoint_residual(a: &QMatrix) -> f64 {
    (a + &a.adjoint()).fro_norm()
}

/// Polar decomposition in the standard frame; see [`polar_antiselfadjoint_in`].
pub fn polar_antiselfadjoint(a: &QMatrix) -> Result<PolarDecomposition> {
    polar_antiselfadjoint_in(a, &Frame::standard())
}

/// Polar decomposition of an anti-selfadjoint operator.
///
/// On the range of `A` the factor `J` is `A |A|^{-1}`. On `ker A` it acts as
/// right multiplication by the frame's `i` on a pivoted orthonormal kernel
/// basis, so `J² = -I` holds on the whole space.
pub fn polar_antiselfadjoint_in(a: &QMatrix, f: &Frame) -> Result<PolarDecomposition> {
    let residual = antiselfadjoint_residual(a);
    if residual > ANTI_SELFADJOINT_TOL * a.fro_norm().max(1.0) {
        return Err(Error::NotAntiSelfAdjoint { residual });
    }
    let n = a.n();
    let chi = complex_embed(a, f);
    // χ(A) is anti-Hermitian, so -i χ(A) is Hermitian with the same eigenvectors.
    let herm = &chi * Complex64::new(0.0, -1.0);
    let (mu, w) = hermitian_eigen(&herm);
    let scale = mu.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let cutoff = KERNEL_TOL * scale;

    let dim = 2 * n;
    let mut modulus = CMatrix::zeros(dim, dim);
    let mut phase = CMatrix::zeros(dim, dim);
    let mut kernel = CMatrix::zeros(dim, dim);
    for (k, &m) in mu.iter().enumerate() {
        let col = w.column(k);
        let p = col * col.adjoint();
        if m.abs() <= cutoff {
            kernel += p;
        } else {
            modulus += &p * Complex64::new(m.abs(), 0.0);
            phase += &p * Complex64::new(0.0, m.signum());
        }
    }
    let modulus = complex_unembed(&modulus, f)?;
    let mut j = complex_unembed(&phase, f)?;
    let kernel = complex_unembed(&kernel, f)?;

    let kernel_dim = kernel.trace().w.round().max(0.0) as usize;
    if kernel_dim > 0 {
        let cols: Vec<QVector> = kernel.columns();
        let basis = gram_schmidt_pivoted(&cols, kernel_dim, 1e-8);
        if basis.len() != kernel_dim {
            return Err(Error::InternalInconsistency(format!(
                "kernel projection of trace {kernel_dim} yielded {} basis vectors",
                basis.len()
            )));
        }
        let unit = f.i().as_quaternion();
        for c in &basis {
            j = &j + &outer(&c.mul_right(unit), c);
        }
    }
    Ok(PolarDecomposition {
        j,
        modulus,
        kernel_dim,
    })
}

/// Residuals of the five defining identities, in order:
/// `A - J M`, `M` selfadjoint PSD, `J` unitary, `J* = -J` with `J² = -I`,
/// and `[J, M] = 0`.
pub fn polar_residuals(a: &QMatrix, p: &PolarDecomposition) -> [f64; 5] {
    let n = a.n();
    let id = QMatrix::identity(n);
    let jm = &p.j * &p.modulus;
    let m_herm = (&p.modulus - &p.modulus.adjoint()).fro_norm();
    let m_neg = selfadjoint_eigenvalues(&p.modulus)
        .into_iter()
        .fold(0.0f64, |acc, e| acc.max(-e));
    let js = p.j.adjoint();
    [
        (a - &jm).fro_norm(),
        m_herm + m_neg,
        (&(&js * &p.j) - &id).fro_norm(),
        (&js + &p.j).fro_norm() + (&(&p.j * &p.j) + &id).fro_norm(),
        p.j.commutator(&p.modulus).fro_norm(),
    ]
}
