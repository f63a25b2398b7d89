//! Reduction of a complex-induced quaternionic system to the complex
//! system on `H⁺` of its structure `J`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::classify::{classify_irreducible, ClassKind};
use crate::algebra::star::StarAlgebra;
use crate::check::Check;
use crate::error::{Error, Result};
use crate::functors::split::{extend_from_plus, restrict_to_plus, split_plus_minus, SplitSpace};
use crate::linalg::embed::{CMatrix, ComplexMatrix};
use crate::linalg::matrix::QMatrix;
use crate::linalg::spectral::{hermitian_eigen, selfadjoint_eigenvalues, spectral_projection};
use crate::linalg::vector::{inner_unchecked, QVector};
use crate::quat::ImaginaryUnit;
use crate::random::{complex64, unit_quaternion};

/// Evolution operators must commute with `J` to this relative accuracy.
pub const COMMUTE_TOL: f64 = 1e-9;
/// Tolerance of every certificate.
pub const CERTIFICATE_TOL: f64 = 1e-9;
/// Eigenvalues closer than this (relative) share a spectral projection.
pub const CLUSTER_TOL: f64 = 1e-8;
/// Random `H⁺` rays probed by the representative certificate.
pub const RAY_SAMPLES: usize = 16;

const RAY_SEED: u64 = 0x7261_7973;

/// The complex system on `H⁺`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexSystem {
    pub n: usize,
    pub generators: Vec<ComplexMatrix>,
    pub projections: Vec<ComplexMatrix>,
    pub evolution: Vec<ComplexMatrix>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReductionReport {
    pub split: SplitSpace,
    pub system: ComplexSystem,
    /// Quaternionic ranks of the sampled projections.
    pub ranks: Vec<usize>,
    pub certificates: Vec<Check>,
}

impl ReductionReport {
    pub fn passed(&self) -> bool {
        self.certificates.iter().all(|c| c.pass)
    }
}

/// Spectral projections of the selfadjoint parts of the generators, one
/// per eigenvalue cluster, plus `I`.
fn projection_samples(a: &StarAlgebra) -> Result<Vec<QMatrix>> {
    let n = a.n();
    let mut out = vec![QMatrix::identity(n)];
    for g in a.generators() {
        let s = (g + &g.adjoint()).scale(0.5);
        let ev = selfadjoint_eigenvalues(&s);
        let scale = ev.iter().fold(0.0f64, |m, x| m.max(x.abs())).max(1e-300);
        let tol = CLUSTER_TOL * scale;
        let mut start = 0;
        for k in 1..=ev.len() {
            if k == ev.len() || ev[k] - ev[k - 1] > tol {
                if start == 0 && k == ev.len() {
                    break; // scalar: only I
                }
                let (lo, hi) = (ev[start] - tol / 2.0, ev[k - 1] + tol / 2.0);
                out.push(spectral_projection(&s, |x| x >= lo && x <= hi)?);
                start = k;
            }
        }
    }
    Ok(out)
}

fn rank_of(m: &CMatrix) -> f64 {
    let (values, _) = hermitian_eigen(m);
    values.iter().sum()
}

/// Reduces `a` to the complex system on `H⁺_{J,i}` and certifies
/// (a) projections are extensions of their restrictions,
/// (b) quaternionic and complex ranks agree,
/// (c) rays of `J`-invariant rank-one projections have a representative in `H⁺`,
/// (d) restricted evolution is unitary, extends back to the original and
///     preserves `H⁺`.
pub fn reduce_system(a: &StarAlgebra, evolution: &[QMatrix], i: ImaginaryUnit) -> Result<ReductionReport> {
    let c = classify_irreducible(a)?;
    if c.kind != ClassKind::ComplexInduced {
        return Err(Error::NotComplexInduced {
            kind: c.kind.to_string(),
        });
    }
    let j = c.j.expect("complex-induced classification carries J");
    for u in evolution {
        if u.n() != a.n() {
            return Err(Error::Dimension("evolution operator size differs from the algebra".into()));
        }
        let residual = u.commutator(&j).fro_norm();
        if residual > COMMUTE_TOL * u.fro_norm().max(1.0) {
            return Err(Error::DoesNotCommute { residual });
        }
    }
    let s = split_plus_minus(&j, i)?;
    let n = a.n();

    let generators = a
        .generators()
        .iter()
        .map(|g| restrict_to_plus(g, &s))
        .collect::<Result<Vec<_>>>()?;

    let mut ext = Check::new("projection_is_extension", 0.0, CERTIFICATE_TOL);
    let mut rank = Check::new("projection_rank", 0.0, CERTIFICATE_TOL);
    let mut projections = Vec::new();
    let mut ranks = Vec::new();
    for e in projection_samples(a)? {
        let r = restrict_to_plus(&e, &s)?;
        ext.merge((&extend_from_plus(&r, &s)? - &e).fro_norm());
        let rank_h = e.trace().w;
        rank.merge((rank_h - rank_of(&r)).abs() + (rank_h - rank_h.round()).abs());
        ranks.push(rank_h.round() as usize);
        projections.push(r);
    }

    let mut ray = Check::new("ray_representative", 0.0, CERTIFICATE_TOL);
    let mut rng = ChaCha8Rng::seed_from_u64(RAY_SEED);
    let f = s.frame();
    let iq = i.as_quaternion();
    for _ in 0..RAY_SAMPLES {
        // p in H⁺, then a random quaternionic phase moves it off H⁺
        let p = s.plus_basis.iter().fold(QVector::zeros(n), |acc, b| {
            &acc + &b.mul_right(i.complex(complex64(&mut rng)))
        });
        let w = p.mul_right(unit_quaternion(&mut rng)).normalized().expect("nonzero");
        let cand = [s.plus_projection(&w), s.plus_projection(&w.mul_right(f.j().as_quaternion()))];
        let best = if cand[0].norm() >= cand[1].norm() { &cand[0] } else { &cand[1] };
        let rep = best.normalized().expect("ray meets H⁺");
        let in_plus = (&j.apply(&rep) - &rep.mul_right(iq)).norm();
        let same_ray = (&w - &rep.mul_right(inner_unchecked(&rep, &w))).norm();
        ray.merge(in_plus.max(same_ray));
    }

    let mut unit = Check::new("evolution_unitary", 0.0, CERTIFICATE_TOL);
    let mut round = Check::new("evolution_roundtrip", 0.0, CERTIFICATE_TOL);
    let mut inv = Check::new("evolution_plus_invariance", 0.0, CERTIFICATE_TOL);
    let mut restricted = Vec::new();
    for u in evolution {
        let r = restrict_to_plus(u, &s)?;
        unit.merge((r.adjoint() * &r - CMatrix::identity(n, n)).norm());
        round.merge((&extend_from_plus(&r, &s)? - u).fro_norm());
        for b in &s.plus_basis {
            let ub = u.apply(b);
            inv.merge((&j.apply(&ub) - &ub.mul_right(iq)).norm());
        }
        restricted.push(r);
    }

    let wrap = |v: Vec<CMatrix>| v.into_iter().map(ComplexMatrix).collect();
    Ok(ReductionReport {
        split: s,
        system: ComplexSystem {
            n,
            generators: wrap(generators),
            projections: wrap(projections),
            evolution: wrap(restricted),
        },
        ranks,
        certificates: vec![ext, rank, ray, unit, round, inv],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::embed::quaternionify_complex;
    use crate::linalg::expm::expm;
    use crate::quat::Frame;
    use crate::random::{cmatrix, qmatrix, rng};
    use num_complex::Complex64;

    fn planted(seed: u64, n: usize) -> (StarAlgebra, Vec<CMatrix>, Frame) {
        let mut g = rng(seed);
        let f = Frame::standard();
        let ms: Vec<CMatrix> = (0..2).map(|_| cmatrix(&mut g, n, n)).collect();
        let gens = ms.iter().map(|m| quaternionify_complex(m, &f).unwrap()).collect();
        (StarAlgebra::new(n, gens).unwrap(), ms, f)
    }

    #[test]
    fn planted_system_passes_all_certificates() {
        let (a, _, f) = planted(21, 3);
        let mut g = rng(22);
        let m = cmatrix(&mut g, 3, 3);
        let anti = (&m - m.adjoint()) * Complex64::new(0.5, 0.0);
        let u = quaternionify_complex(&expm(&(anti * Complex64::new(0.7, 0.0))), &f).unwrap();
        let r = reduce_system(&a, &[u], ImaginaryUnit::E1).unwrap();
        assert!(r.passed(), "{:?}", r.certificates);
        assert_eq!(r.ranks[0], 3);
        assert!((&r.system.projections[0].0 - CMatrix::identity(3, 3)).norm() < 1e-12);
    }

    #[test]
    fn restricted_exponential_matches_oracle() {
        let (a, _, f) = planted(31, 2);
        let mut g = rng(32);
        let m = cmatrix(&mut g, 2, 2);
        let anti = (&m - m.adjoint()) * Complex64::new(0.5, 0.0);
        let t = 1.3;
        let oracle = expm(&(&anti * Complex64::new(t, 0.0)));
        let u = quaternionify_complex(&oracle, &f).unwrap();
        let r = reduce_system(&a, &[u], ImaginaryUnit::E1).unwrap();
        // the sign convention picks J = +e1 I here, so H⁺ is the standard basis
        assert!((&r.system.evolution[0].0 - &oracle).norm() < 1e-9);
    }

    #[test]
    fn proper_quaternionic_is_rejected() {
        let mut g = rng(41);
        let a = StarAlgebra::new(2, vec![qmatrix(&mut g, 2), qmatrix(&mut g, 2)]).unwrap();
        assert!(matches!(
            reduce_system(&a, &[], ImaginaryUnit::E1),
            Err(Error::NotComplexInduced { .. })
        ));
    }

    #[test]
    fn non_commuting_evolution_is_rejected() {
        let (a, _, _) = planted(51, 2);
        let u = QMatrix::scalar(2, crate::quat::Quaternion::E2);
        assert!(matches!(
            reduce_system(&a, &[u], ImaginaryUnit::E1),
            Err(Error::DoesNotCommute { .. })
        ));
    }
}
