use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::vector::{inner, QVector};
use crate::quat::{Frame, Quaternion};

pub const NORM_TOL: f64 = 1e-10;
/// Consecutive phase samples must be closer than this.
pub const MAX_STEP: f64 = 0.1;

/// Complex, symplectic and quaternionic transition probabilities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransitionProbs {
    pub pc: f64,
    pub ps: f64,
    pub ph: f64,
}

/// Splits `⟨v, u⟩ = qC + qS j` in the frame; `pC = |qC|²`, `pS = |qS|²`
/// and `pH = |⟨v, u⟩|² = pC + pS`.
pub fn transition_probs(v: &QVector, u: &QVector, f: &Frame) -> Result<TransitionProbs> {
    for w in [v, u] {
        let norm = w.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::Normalization { norm });
        }
    }
    let q = inner(v, u)?;
    let (qc, qs) = f.split(q);
    Ok(TransitionProbs {
        pc: qc.norm_sqr(),
        ps: qs.norm_sqr(),
        ph: q.norm_sqr(),
    })
}

/// Finite-difference phase rates `conj(ω_k) (ω_{k+1} - ω_k) / dt`.
pub fn quaternionic_phase(omega: &[Quaternion], dt: f64) -> Result<Vec<Quaternion>> {
    if dt.is_nan() || dt <= 0.0 {
        return Err(Error::Precondition(format!("time step must be positive, got {dt}")));
    }
    for w in omega {
        let norm = w.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::Normalization { norm });
        }
    }
    omega
        .windows(2)
        .map(|p| {
            let step = (p[1] - p[0]).norm();
            if step > MAX_STEP {
                return Err(Error::Precondition(format!(
                    "consecutive samples differ by {step:.3}, above {MAX_STEP}"
                )));
            }
            Ok(p[0].conj() * (p[1] - p[0]) / dt)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{frame, rng, unit_qvector};

    #[test]
    fn self_transition() {
        let v = unit_qvector(&mut rng(1), 3);
        let p = transition_probs(&v, &v, &Frame::standard()).unwrap();
        assert!((p.pc - 1.0).abs() < 1e-12 && p.ps < 1e-24 && (p.ph - 1.0).abs() < 1e-12);
    }

    #[test]
    fn j_partner_is_complex_orthogonal() {
        let mut g = rng(2);
        let f = frame(&mut g);
        let v = unit_qvector(&mut g, 2);
        let u = v.mul_right(f.j().as_quaternion());
        let p = transition_probs(&v, &u, &f).unwrap();
        assert!(p.pc < 1e-24);
        assert!((p.ps - 1.0).abs() < 1e-12);
        assert!((p.ph - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sum_rule() {
        let mut g = rng(3);
        for _ in 0..50 {
            let f = frame(&mut g);
            let v = unit_qvector(&mut g, 3);
            let u = unit_qvector(&mut g, 3);
            let p = transition_probs(&v, &u, &f).unwrap();
            assert!((p.ph - p.pc - p.ps).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_unnormalized() {
        let v = QVector::new(vec![Quaternion::real(2.0)]);
        assert!(matches!(transition_probs(&v, &v, &Frame::standard()), Err(Error::Normalization { .. })));
    }

    #[test]
    fn constant_phase_is_zero() {
        let w = vec![Quaternion::E2; 5];
        assert!(quaternionic_phase(&w, 0.01).unwrap().iter().all(|h| h.norm() == 0.0));
    }

    #[test]
    fn exponential_phases() {
        let dt = 1e-3;
        for unit in [Quaternion::E1, Quaternion::E2] {
            let w: Vec<Quaternion> = (0..100).map(|k| (unit * (k as f64 * dt)).exp()).collect();
            for h in quaternionic_phase(&w, dt).unwrap() {
                assert!((h - unit).norm() < 2.0 * dt);
                assert!(h.w.abs() <= 5.0 * dt);
            }
        }
    }

    #[test]
    fn phase_rejects_bad_samples() {
        assert!(matches!(
            quaternionic_phase(&[Quaternion::real(1.5)], 0.1),
            Err(Error::Normalization { .. })
        ));
        assert!(quaternionic_phase(&[Quaternion::ONE, Quaternion::E1], 0.1).is_err());
    }
}
