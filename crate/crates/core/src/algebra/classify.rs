//! Irreducibility and the real/complex/quaternionic trichotomy of
//! irreducible algebras by their commutant.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::star::{CommutantBasis, StarAlgebra};
use crate::check::Check;
use crate::error::{Error, Result};
use crate::linalg::matrix::QMatrix;
use crate::linalg::spectral::{selfadjoint_eigenvalues, spectral_projection};
use crate::random::real_scalar;

/// Relative eigenvalue spread above which a selfadjoint commutant element
/// counts as non-scalar.
pub const SPREAD_TOL: f64 = 1e-7;
/// Number of random commutant combinations probed for projections.
pub const PROBES: usize = 32;
/// Scalar tolerance inside [`extract_anti_unit`].
pub const SCALAR_TOL: f64 = 1e-8;
/// `|c|` below this (relative) means the anti-selfadjoint part vanishes.
pub const ZERO_TOL: f64 = 1e-10;
/// Tolerance on the structural identities of recovered units.
pub const UNIT_TOL: f64 = 1e-8;

const PROBE_SEED: u64 = 0x5eed_c0de;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClassKind {
    ProperQuaternionic,
    ComplexInduced,
    RealInduced,
}

impl std::fmt::Display for ClassKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ClassKind::ProperQuaternionic => "ProperQuaternionic",
            ClassKind::ComplexInduced => "ComplexInduced",
            ClassKind::RealInduced => "RealInduced",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub kind: ClassKind,
    #[serde(rename = "J", default, skip_serializing_if = "Option::is_none")]
    pub j: Option<QMatrix>,
    #[serde(rename = "I", default, skip_serializing_if = "Option::is_none")]
    pub i: Option<QMatrix>,
    #[serde(rename = "K", default, skip_serializing_if = "Option::is_none")]
    pub k: Option<QMatrix>,
    pub commutant_dim: usize,
}

/// Outcome of the projection scan of a commutant.
#[derive(Debug, Clone, PartialEq)]
pub struct Irreducibility {
    pub irreducible: bool,
    /// A nontrivial projection in the commutant when reducible.
    pub witness: Option<QMatrix>,
}

/// `T = a I + b J`; `j` is absent when `b` vanishes.
#[derive(Debug, Clone, PartialEq)]
pub struct AntiUnit {
    pub a: f64,
    pub b: f64,
    pub j: Option<QMatrix>,
}

/// Spectral projection of `s` below the midpoint of its widest eigenvalue
/// gap, or `None` when the spectrum is a single point.
fn gap_projection(s: &QMatrix) -> Option<QMatrix> {
    let ev = selfadjoint_eigenvalues(s);
    let (lo, hi) = (ev[0], ev[ev.len() - 1]);
    let scale = lo.abs().max(hi.abs());
    if scale == 0.0 || hi - lo <= SPREAD_TOL * scale {
        return None;
    }
    let (mut gap, mut cut) = (0.0, lo);
    for w in ev.windows(2) {
        if w[1] - w[0] > gap {
            gap = w[1] - w[0];
            cut = 0.5 * (w[0] + w[1]);
        }
    }
    spectral_projection(s, |x| x < cut).ok()
}

/// Scans random selfadjoint elements `(X + X*)/2` and `X* X` of the
/// commutant for a non-scalar spectrum. A commutant isomorphic to `R`, `C`
/// or `H` has only scalar selfadjoint elements; anything else yields a
/// spectral projection, which lies in the commutant.
pub fn irreducibility(a: &StarAlgebra) -> Irreducibility {
    irreducibility_of(a.commutant())
}

pub(crate) fn irreducibility_of(c: &CommutantBasis) -> Irreducibility {
    if c.dim_r <= 1 {
        return Irreducibility {
            irreducible: true,
            witness: None,
        };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(PROBE_SEED);
    for _ in 0..PROBES {
        let x = c
            .basis
            .iter()
            .fold(QMatrix::zeros(c.n), |acc, b| &acc + &b.scale(real_scalar(&mut rng)));
        let xs = x.adjoint();
        for s in [(&x + &xs).scale(0.5), &xs * &x] {
            if let Some(p) = gap_projection(&s) {
                return Irreducibility {
                    irreducible: false,
                    witness: Some(p),
                };
            }
        }
    }
    Irreducibility {
        irreducible: true,
        witness: None,
    }
}

pub fn is_irreducible(a: &StarAlgebra) -> bool {
    irreducibility(a).irreducible
}

/// Splits a commutant element `T = a I + T₂` with `T₂` anti-selfadjoint and
/// `T₂² = c I`, returning `J = T₂ / √(-c)` when `c ≠ 0`.
pub fn extract_anti_unit(t: &QMatrix) -> Result<AntiUnit> {
    let n = t.n();
    let nf = n as f64;
    let id = QMatrix::identity(n);
    let scale = t.fro_norm().max(1.0);
    let a = t.trace().w / nf;
    let t1 = (t + &t.adjoint()).scale(0.5);
    let r1 = (&t1 - &id.scale(a)).fro_norm();
    if r1 > SCALAR_TOL * scale {
        return Err(Error::NotInScalarCommutant { residual: r1 });
    }
    let t2 = (t - &t.adjoint()).scale(0.5);
    let t2sq = &t2 * &t2;
    let c = t2sq.trace().w / nf;
    let r2 = (&t2sq - &id.scale(c)).fro_norm();
    if r2 > SCALAR_TOL * scale * scale {
        return Err(Error::NotInScalarCommutant { residual: r2 });
    }
    if c.abs() <= ZERO_TOL * scale * scale / nf {
        return Ok(AntiUnit { a, b: 0.0, j: None });
    }
    if c > 0.0 {
        return Err(Error::NotInScalarCommutant { residual: c });
    }
    let b = (-c).sqrt();
    Ok(AntiUnit {
        a,
        b,
        j: Some(t2.scale(1.0 / b)),
    })
}

/// Flips the sign so the first non-negligible coordinate of `vec(J)` is positive.
fn fix_sign(j: QMatrix) -> QMatrix {
    let first = j.to_real_vec().into_iter().find(|x| x.abs() > 1e-8);
    match first {
        Some(x) if x < 0.0 => j.scale(-1.0),
        _ => j,
    }
}

/// Anti-selfadjoint parts of the basis elements, largest first.
fn imaginary_parts(c: &CommutantBasis) -> Vec<QMatrix> {
    let mut parts: Vec<QMatrix> = c
        .basis
        .iter()
        .map(|b| (b - &b.adjoint()).scale(0.5))
        .collect();
    parts.sort_by(|x, y| y.fro_norm().total_cmp(&x.fro_norm()));
    parts
}

fn unit_from(t: &QMatrix) -> Result<QMatrix> {
    extract_anti_unit(t)?.j.ok_or_else(|| {
        Error::InternalInconsistency("commutant element has no anti-selfadjoint part".into())
    })
}

/// Classifies an irreducible algebra by its commutant, recovering the
/// complex structure `J` or the quaternionic triple `(I, J, K = IJ)`.
pub fn classify_irreducible(a: &StarAlgebra) -> Result<Classification> {
    let irr = irreducibility(a);
    if !irr.irreducible {
        return Err(Error::Precondition("algebra is reducible".into()));
    }
    let c = a.commutant();
    let n = a.n();
    match c.dim_r {
        1 => Ok(Classification {
            kind: ClassKind::ProperQuaternionic,
            j: None,
            i: None,
            k: None,
            commutant_dim: 1,
        }),
        2 => {
            let parts = imaginary_parts(c);
            let j = fix_sign(unit_from(&parts[0])?);
            Ok(Classification {
                kind: ClassKind::ComplexInduced,
                j: Some(j),
                i: None,
                k: None,
                commutant_dim: 2,
            })
        }
        4 => {
            let parts = imaginary_parts(c);
            let i_op = fix_sign(unit_from(&parts[0])?);
            let nf = n as f64;
            // remove the I component: J ← J + (Re tr(I J)/n) I
            let best = parts[1..]
                .iter()
                .map(|p| p + &i_op.scale((&i_op * p).trace().w / nf))
                .max_by(|x, y| x.fro_norm().total_cmp(&y.fro_norm()))
                .expect("four basis elements");
            let j_op = fix_sign(unit_from(&best)?);
            let anti = i_op.anticommutator(&j_op).fro_norm();
            if anti > UNIT_TOL * nf.sqrt() {
                return Err(Error::InternalInconsistency(format!(
                    "recovered I and J fail to anticommute (residual {anti:.3e})"
                )));
            }
            let k_op = &i_op * &j_op;
            Ok(Classification {
                kind: ClassKind::RealInduced,
                j: Some(j_op),
                i: Some(i_op),
                k: Some(k_op),
                commutant_dim: 4,
            })
        }
        d => Err(Error::InternalInconsistency(format!(
            "irreducible algebra with commutant of real dimension {d}"
        ))),
    }
}

fn unit_checks(name: &str, u: &QMatrix, gens: &[QMatrix], out: &mut Vec<Check>) {
    let n = u.n();
    let id = QMatrix::identity(n);
    let scale = (n as f64).sqrt();
    out.push(Check::new(format!("{name}_unitary"), (&(&u.adjoint() * u) - &id).fro_norm(), UNIT_TOL * scale));
    out.push(Check::new(format!("{name}_antiselfadjoint"), (u + &u.adjoint()).fro_norm(), UNIT_TOL * scale));
    let comm = gens
        .iter()
        .map(|g| u.commutator(g).fro_norm() / g.fro_norm().max(1e-300))
        .fold(0.0, f64::max);
    out.push(Check::new(format!("{name}_commutes"), comm, UNIT_TOL * scale));
}

/// Residual checks for the invariants of a classification.
pub fn classification_checks(a: &StarAlgebra, c: &Classification) -> Vec<Check> {
    let mut out = Vec::new();
    let gens = a.generators();
    for (name, op) in [("I", &c.i), ("J", &c.j), ("K", &c.k)] {
        if let Some(op) = op {
            unit_checks(name, op, gens, &mut out);
        }
    }
    if let (Some(i), Some(j), Some(k)) = (&c.i, &c.j, &c.k) {
        let scale = (a.n() as f64).sqrt();
        out.push(Check::new("IJ_anticommute", i.anticommutator(j).fro_norm(), UNIT_TOL * scale));
        out.push(Check::new("JK_anticommute", j.anticommutator(k).fro_norm(), UNIT_TOL * scale));
        out.push(Check::new("KI_anticommute", k.anticommutator(i).fro_norm(), UNIT_TOL * scale));
        out.push(Check::new("K_equals_IJ", (k - &(i * j)).fro_norm(), UNIT_TOL * scale));
    }
    out
}
