//! Singular value decompositions through `faer`.
//!
//! nalgebra's SVD loses accuracy on rank-deficient input (reconstruction
//! errors around `1e-5` on random rank-9 matrices of size 36x28), which is
//! exactly the regime of nullspace and span computations.

use faer::dyn_stack::{MemBuffer, MemStack};
use faer::linalg::svd::{svd, svd_scratch, ComputeSvdVectors, SvdParams};
use faer::{Auto, Mat, Par, Spec};

use crate::linalg::embed::{CMatrix, RMatrix};

/// `(σ descending, U, V)` from faer's implicit QR iteration.
///
/// Above 128 columns faer switches to divide and conquer by default, which
/// misplaces singular values of clustered spectra (a reported `8e-5` for a
/// vector with `‖Mv‖ = 2e-10` on a commutator map with a 128-fold zero).
fn decompose(m: &RMatrix, vectors: ComputeSvdVectors) -> (Vec<f64>, Mat<f64>, Mat<f64>) {
    let (rows, cols) = (m.nrows(), m.ncols());
    let p = rows.min(cols);
    let a = Mat::from_fn(rows, cols, |r, c| m[(r, c)]);
    let (ucols, vcols, want) = match vectors {
        ComputeSvdVectors::Full => (rows, cols, true),
        ComputeSvdVectors::Thin => (p, p, true),
        ComputeSvdVectors::No => (0, 0, false),
    };
    let mut s = Mat::<f64>::zeros(p, 1);
    let mut u = Mat::<f64>::zeros(rows, ucols);
    let mut v = Mat::<f64>::zeros(cols, vcols);
    let params = Spec::new(SvdParams {
        recursion_threshold: usize::MAX,
        ..<SvdParams as Auto<f64>>::auto()
    });
    let mut buf = MemBuffer::new(svd_scratch::<f64>(rows, cols, vectors, vectors, Par::Seq, params));
    svd(
        a.as_ref(),
        s.as_mut().col_mut(0).as_diagonal_mut(),
        want.then(|| u.as_mut()),
        want.then(|| v.as_mut()),
        Par::Seq,
        MemStack::new(&mut buf),
        params,
    )
    .expect("SVD of a finite matrix converges");
    ((0..p).map(|k| s[(k, 0)]).collect(), u, v)
}

/// Thin SVD `M = U diag(σ) Vᵀ`, singular values descending.
pub fn thin_svd(m: &RMatrix) -> (Vec<f64>, RMatrix, RMatrix) {
    let (rows, cols) = (m.nrows(), m.ncols());
    let p = rows.min(cols);
    if p == 0 {
        return (Vec::new(), RMatrix::zeros(rows, 0), RMatrix::zeros(cols, 0));
    }
    let (sigma, u, v) = decompose(m, ComputeSvdVectors::Thin);
    (
        sigma,
        RMatrix::from_fn(rows, p, |r, c| u[(r, c)]),
        RMatrix::from_fn(cols, p, |r, c| v[(r, c)]),
    )
}

/// Full right singular basis `V` (`n x n`) with the singular values padded
/// by zeros to length `n`, descending.
pub fn right_singular(m: &RMatrix) -> (Vec<f64>, RMatrix) {
    let cols = m.ncols();
    if cols == 0 {
        return (Vec::new(), RMatrix::zeros(0, 0));
    }
    if m.nrows() == 0 {
        return (vec![0.0; cols], RMatrix::identity(cols, cols));
    }
    let (mut sigma, _, v) = decompose(m, ComputeSvdVectors::Full);
    sigma.resize(cols, 0.0);
    (sigma, RMatrix::from_fn(cols, cols, |r, c| v[(r, c)]))
}

pub fn real_singular_values(m: &RMatrix) -> Vec<f64> {
    if m.is_empty() {
        return Vec::new();
    }
    decompose(m, ComputeSvdVectors::No).0
}

/// Singular values of a complex matrix, read off its real form
/// `[[Re, -Im], [Im, Re]]` where each one appears twice.
pub fn complex_singular_values(m: &CMatrix) -> Vec<f64> {
    let (r, c) = (m.nrows(), m.ncols());
    let real = RMatrix::from_fn(2 * r, 2 * c, |a, b| {
        let z = m[(a % r, b % c)];
        match (a < r, b < c) {
            (true, true) | (false, false) => z.re,
            (true, false) => -z.im,
            (false, true) => z.im,
        }
    });
    real_singular_values(&real).into_iter().step_by(2).collect()
}
