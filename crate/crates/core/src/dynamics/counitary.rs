//! Co-unitary maps `U_φ(v) = (U v) h⁻¹` for the inner automorphism
//! `φ(a) = h a h⁻¹`, and the left action they would induce.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::check::Check;
use crate::error::{Error, Result};
use crate::linalg::matrix::QMatrix;
use crate::linalg::spectral::operator_norm;
use crate::linalg::vector::{inner_unchecked, QVector};
use crate::quat::Quaternion;
use crate::random::{quaternion, qvector};

pub const NORM_TOL: f64 = 1e-10;
pub const RMQQ_TOL: f64 = 1e-10;
/// Random vector/scalar samples per unitary.
pub const SAMPLES: usize = 8;

const SAMPLE_SEED: u64 = 0x636f_756e;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairDistance {
    pub a: usize,
    pub b: usize,
    /// `‖U_a - U_b‖` (operator norm).
    pub raw: f64,
    /// `min(‖U_a - U_b‖, ‖U_a + U_b‖)`: distance modulo the central sign.
    pub modulo_sign: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CounitaryReport {
    pub h: Quaternion,
    /// Two checks per unitary: right-semilinearity and the twisted inner
    /// product identity.
    pub rmqq: Vec<Check>,
    /// Candidate left actions `v ↦ U_φ(v) h`, which equal `U`.
    pub candidates: Vec<QMatrix>,
    pub distances: Vec<PairDistance>,
    /// `‖U - I‖` per candidate; zero means `h v = v`.
    pub identity_distance: Vec<f64>,
}

impl CounitaryReport {
    pub fn rmqq_pass(&self) -> bool {
        self.rmqq.iter().all(|c| c.pass)
    }
}

pub fn counitary_demo(h: Quaternion, unitaries: &[QMatrix]) -> Result<CounitaryReport> {
    let norm = h.norm();
    if (norm - 1.0).abs() > NORM_TOL {
        return Err(Error::Normalization { norm });
    }
    let h_inv = h.conj();
    let phi = |a: Quaternion| h * a * h_inv;
    let mut rmqq = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    for (k, u) in unitaries.iter().enumerate() {
        let n = u.n();
        let r = (&(&u.adjoint() * u) - &QMatrix::identity(n)).fro_norm();
        if r > NORM_TOL * (n as f64).sqrt().max(1.0) {
            return Err(Error::structure(format!("U[{k}] is not unitary"), r));
        }
        let u_phi = |v: &QVector| u.apply(v).mul_right(h_inv);
        let (mut semi, mut ip) = (0.0f64, 0.0f64);
        for _ in 0..SAMPLES {
            let v = qvector(&mut rng, n);
            let w = qvector(&mut rng, n);
            let a = quaternion(&mut rng);
            let scale = v.norm() * a.norm();
            semi = semi.max((&u_phi(&v.mul_right(a)) - &u_phi(&v).mul_right(phi(a))).norm() / scale);
            let lhs = inner_unchecked(&u_phi(&v), &u_phi(&w));
            ip = ip.max((lhs - phi(inner_unchecked(&v, &w))).norm() / (v.norm() * w.norm()));
        }
        rmqq.push(Check::new(format!("U{k}_semilinear"), semi, RMQQ_TOL));
        rmqq.push(Check::new(format!("U{k}_inner_product"), ip, RMQQ_TOL));
    }
    // U_φ(v) h = (U v) h⁻¹ h = U v
    let candidates: Vec<QMatrix> = unitaries.to_vec();
    let mut distances = Vec::new();
    for a in 0..candidates.len() {
        for b in a + 1..candidates.len() {
            let raw = operator_norm(&(&candidates[a] - &candidates[b]));
            let plus = operator_norm(&(&candidates[a] + &candidates[b]));
            distances.push(PairDistance {
                a,
                b,
                raw,
                modulo_sign: raw.min(plus),
            });
        }
    }
    let identity_distance = candidates
        .iter()
        .map(|c| operator_norm(&(c - &QMatrix::identity(c.n()))))
        .collect();
    Ok(CounitaryReport {
        h,
        rmqq,
        candidates,
        distances,
        identity_distance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{rng, unit_quaternion, unitary};

    #[test]
    fn identity_gives_trivial_left_action() {
        let h = unit_quaternion(&mut rng(1));
        let r = counitary_demo(h, &[QMatrix::identity(2)]).unwrap();
        assert!(r.rmqq_pass());
        assert!(r.identity_distance[0] < 1e-15);
    }

    #[test]
    fn sign_flip_is_central() {
        let mut g = rng(2);
        let h = unit_quaternion(&mut g);
        let u = unitary(&mut g, 3);
        let r = counitary_demo(h, &[u.clone(), u.scale(-1.0)]).unwrap();
        assert!(r.rmqq_pass());
        assert!(r.distances[0].modulo_sign < 1e-12);
        assert!((r.distances[0].raw - 2.0).abs() < 1e-12);
    }

    #[test]
    fn independent_unitaries_disagree() {
        let mut g = rng(3);
        let h = unit_quaternion(&mut g);
        let us = vec![unitary(&mut g, 3), unitary(&mut g, 3)];
        let r = counitary_demo(h, &us).unwrap();
        assert!(r.rmqq_pass(), "{:?}", r.rmqq);
        assert!(r.distances[0].modulo_sign >= 0.1);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(
            counitary_demo(Quaternion::real(2.0), &[]),
            Err(Error::Normalization { .. })
        ));
        assert!(matches!(
            counitary_demo(Quaternion::ONE, &[QMatrix::identity(2).scale(2.0)]),
            Err(Error::Structure { .. })
        ));
    }
}
