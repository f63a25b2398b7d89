use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::embed::{complex_embed, complex_unembed};
use crate::linalg::expm::expm;
use crate::linalg::matrix::QMatrix;
use crate::linalg::polar::{antiselfadjoint_residual, polar_antiselfadjoint_in, PolarDecomposition};
use crate::linalg::vector::QVector;
use crate::quat::Frame;

/// `‖H + H*‖ <= ANTI_TOL max(1, ‖H‖)`.
pub const ANTI_TOL: f64 = 1e-10;

/// A time-independent anti-selfadjoint generator `∂f/∂t = -H f`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Hamiltonian {
    h: QMatrix,
    frame: Frame,
}

impl Hamiltonian {
    pub fn new(h: QMatrix, frame: Frame) -> Result<Hamiltonian> {
        let r = antiselfadjoint_residual(&h);
        if r > ANTI_TOL * h.fro_norm().max(1.0) {
            return Err(Error::structure("Hamiltonian is not anti-selfadjoint", r));
        }
        Ok(Hamiltonian { h, frame })
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.h
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn n(&self) -> usize {
        self.h.n()
    }

    /// `H = J_H |H|`.
    pub fn polar(&self) -> Result<PolarDecomposition> {
        polar_antiselfadjoint_in(&self.h, &self.frame)
    }
}

/// `exp(-t H)`, computed on the complex embedding.
pub fn propagator(h: &Hamiltonian, t: f64) -> Result<QMatrix> {
    let chi = complex_embed(&h.h, &h.frame) * Complex64::new(-t, 0.0);
    complex_unembed(&expm(&chi), &h.frame)
}

pub fn evolve(h: &Hamiltonian, v: &QVector, t: f64) -> Result<QVector> {
    if v.len() != h.n() {
        return Err(Error::Dimension(format!("state of length {} for a Hamiltonian on H^{}", v.len(), h.n())));
    }
    Ok(propagator(h, t)?.apply(v))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvolutionTrace {
    pub t: Vec<f64>,
    pub states: Vec<QVector>,
    pub norms: Vec<f64>,
}

/// States `exp(-t H) v` at the given times.
pub fn evolution_trace(h: &Hamiltonian, v: &QVector, times: &[f64]) -> Result<EvolutionTrace> {
    let states = times
        .iter()
        .map(|&t| evolve(h, v, t))
        .collect::<Result<Vec<_>>>()?;
    let norms = states.iter().map(QVector::norm).collect();
    Ok(EvolutionTrace {
        t: times.to_vec(),
        states,
        norms,
    })
}
