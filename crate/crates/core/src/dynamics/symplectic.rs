//! Symplectic components `f = F1 + j F2` of a wave and the complex
//! `2n x 2n` generator acting on `(F1, F2)`.
//!
//! Components are taken with respect to a [`LeftMultiplication`]: `F1`, `F2`
//! are complex coordinate vectors over its real basis, and `j` acts from the
//! left through `M_j`. This is the left-factor convention; the `H⁺` splitting
//! in [`crate::functors`] writes `v = v1 + v2 j` with `j` on the right.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::functors::leftmult::LeftMultiplication;
use crate::linalg::embed::{CMatrix, CVector, RMatrix, RVector};
use crate::linalg::expm::expm;
use crate::linalg::matrix::QMatrix;
use crate::linalg::vector::QVector;
use crate::quat::{Frame, Quaternion, UNIT_TOL};

/// The block matrix built from `H0..H3` represents `H` itself, so the flow
/// `∂f/∂t = -H f` is `exp(BLOCK_GENERATOR_SIGN · t · 𝓗)` on `(F1, F2)`.
pub const BLOCK_GENERATOR_SIGN: f64 = -1.0;
/// The assembled `H` must be anti-selfadjoint to this relative accuracy.
pub const ANTI_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticWave {
    pub f1: CVector,
    pub f2: CVector,
}

impl SymplecticWave {
    /// `(F1, F2)` stacked into one vector of length `2n`.
    pub fn stacked(&self) -> CVector {
        let n = self.f1.len();
        CVector::from_fn(2 * n, |r, _| if r < n { self.f1[r] } else { self.f2[r - n] })
    }

    pub fn from_stacked(w: &CVector) -> SymplecticWave {
        let n = w.len() / 2;
        SymplecticWave {
            f1: w.rows(0, n).into_owned(),
            f2: w.rows(n, n).into_owned(),
        }
    }
}

fn check_frame(l: &LeftMultiplication, f: &Frame) -> Result<()> {
    let lf = l.frame();
    let mut worst = 0.0f64;
    for (a, b) in [(lf.i(), f.i()), (lf.j(), f.j())] {
        worst = worst.max((a.as_quaternion() - b.as_quaternion()).norm());
    }
    if worst > UNIT_TOL {
        return Err(Error::structure("left multiplication was built for another frame", worst));
    }
    Ok(())
}

/// `F1 = f0 + i f1`, `F2 = f2 - i f3` for `v = f0 + M_i f1 + M_j f2 + M_k f3`.
pub fn symplectic_components(v: &QVector, f: &Frame, l: &LeftMultiplication) -> Result<SymplecticWave> {
    check_frame(l, f)?;
    if v.len() != l.dim() {
        return Err(Error::Dimension(format!("wave of length {} on H^{}", v.len(), l.dim())));
    }
    let [f0, f1, f2, f3] = l.real_components(v);
    let n = l.dim();
    Ok(SymplecticWave {
        f1: CVector::from_fn(n, |r, _| Complex64::new(f0[r], f1[r])),
        f2: CVector::from_fn(n, |r, _| Complex64::new(f2[r], -f3[r])),
    })
}

/// `f = F1 + M_j F2`.
pub fn reconstruct_wave(w: &SymplecticWave, l: &LeftMultiplication) -> QVector {
    let n = l.dim();
    let parts = [
        RVector::from_fn(n, |r, _| w.f1[r].re),
        RVector::from_fn(n, |r, _| w.f1[r].im),
        RVector::from_fn(n, |r, _| w.f2[r].re),
        RVector::from_fn(n, |r, _| -w.f2[r].im),
    ];
    l.from_real_components(&parts)
}

/// `H = H0 + M_i H1 + M_j H2 + M_k H3`, with each real `H_s` acting on
/// coordinates over the real basis of `l`.
pub fn assemble_hamiltonian(parts: &[RMatrix; 4], l: &LeftMultiplication) -> Result<QMatrix> {
    let n = l.dim();
    if parts.iter().any(|p| p.nrows() != n || p.ncols() != n) {
        return Err(Error::Dimension(format!("components must be {n}x{n}")));
    }
    let b = QMatrix::from_columns(l.real_basis())?;
    let bs = b.adjoint();
    let f = l.frame();
    let units = [Quaternion::ONE, f.i().as_quaternion(), f.j().as_quaternion(), f.k().as_quaternion()];
    let mut h = QMatrix::zeros(n);
    for (p, u) in parts.iter().zip(units) {
        let coord = QMatrix::from_fn(n, |r, c| u * p[(r, c)]);
        h = &h + &(&(&b * &coord) * &bs);
    }
    Ok(h)
}

/// Inverse of [`assemble_hamiltonian`]; the input must commute with the
/// left multiplications for the result to reassemble exactly.
pub fn disassemble_hamiltonian(h: &QMatrix, l: &LeftMultiplication) -> Result<[RMatrix; 4]> {
    let n = l.dim();
    if h.n() != n {
        return Err(Error::Dimension(format!("operator on H^{} with left multiplication on H^{n}", h.n())));
    }
    let b = QMatrix::from_columns(l.real_basis())?;
    let coord = &(&b.adjoint() * h) * &b;
    let f = l.frame();
    let mut out = [RMatrix::zeros(n, n), RMatrix::zeros(n, n), RMatrix::zeros(n, n), RMatrix::zeros(n, n)];
    for r in 0..n {
        for c in 0..n {
            let a = f.coords(coord[(r, c)]);
            for s in 0..4 {
                out[s][(r, c)] = a[s];
            }
        }
    }
    Ok(out)
}

/// `𝓗 = [[𝓗1, -conj 𝓗2], [𝓗2, conj 𝓗1]]` with `𝓗1 = H0 + i H1`,
/// `𝓗2 = H2 - i H3`. Acting on `(F1, F2)` it reproduces `H f`.
pub fn hamiltonian_block(parts: &[RMatrix; 4], f: &Frame) -> Result<CMatrix> {
    let n = parts[0].nrows();
    let l = LeftMultiplication::pointwise(n, *f);
    let h = assemble_hamiltonian(parts, &l)?;
    let r = (&h + &h.adjoint()).fro_norm();
    if r > ANTI_TOL * h.fro_norm().max(1.0) {
        return Err(Error::structure("assembled Hamiltonian is not anti-selfadjoint", r));
    }
    let h1 = CMatrix::from_fn(n, n, |r, c| Complex64::new(parts[0][(r, c)], parts[1][(r, c)]));
    let h2 = CMatrix::from_fn(n, n, |r, c| Complex64::new(parts[2][(r, c)], -parts[3][(r, c)]));
    let mut block = CMatrix::zeros(2 * n, 2 * n);
    block.view_mut((0, 0), (n, n)).copy_from(&h1);
    block.view_mut((0, n), (n, n)).copy_from(&(-h2.conjugate()));
    block.view_mut((n, 0), (n, n)).copy_from(&h2);
    block.view_mut((n, n), (n, n)).copy_from(&h1.conjugate());
    Ok(block)
}

/// Propagator of `(F1, F2)` over time `t`.
pub fn block_propagator(block: &CMatrix, t: f64) -> CMatrix {
    expm(&(block * Complex64::new(BLOCK_GENERATOR_SIGN * t, 0.0)))
}
