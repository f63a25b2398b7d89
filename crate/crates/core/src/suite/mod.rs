//! Registry of randomized invariant checks.
//!
//! Every property is a function of a seeded generator and a quaternionic
//! dimension `n` returning named residuals. Trials are seeded from the
//! master seed, the property name, `n` and the trial index, so a run is
//! reproducible regardless of the order in which trials execute.

mod properties;

use serde::{Deserialize, Serialize};

use crate::check::Check;
use crate::error::Result;
use crate::random::{rng, trial_seed, Rand};

/// Trial cap for properties that compute commutants.
pub const HEAVY_TRIALS: usize = 20;

/// One residual produced by a trial.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
}

impl Sample {
    pub fn new(name: impl Into<String>, residual: f64, tolerance: f64) -> Sample {
        Sample {
            name: name.into(),
            residual,
            tolerance,
        }
    }
}

pub type TrialFn = fn(&mut Rand, usize) -> Result<Vec<Sample>>;

#[derive(Clone, Copy)]
pub struct Property {
    pub name: &'static str,
    /// Runs at most [`HEAVY_TRIALS`] trials.
    pub heavy: bool,
    pub run: TrialFn,
}

impl std::fmt::Debug for Property {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Property").field("name", &self.name).field("heavy", &self.heavy).finish()
    }
}

impl Property {
    pub fn trials(&self, requested: usize) -> usize {
        if self.heavy {
            requested.min(HEAVY_TRIALS)
        } else {
            requested
        }
    }

    pub fn seed(&self, master: u64, n: usize, trial: usize) -> u64 {
        let named = trial_seed(master, fnv1a(self.name));
        trial_seed(trial_seed(named, n as u64), trial as u64)
    }

    pub fn run_trial(&self, master: u64, n: usize, trial: usize) -> Result<Vec<Sample>> {
        let mut g = rng(self.seed(master, n, trial));
        (self.run)(&mut g, n)
    }

    /// Sequential run of `trials` trials at dimension `n`.
    pub fn run(&self, master: u64, n: usize, trials: usize, tol_scale: f64) -> Outcome {
        let results = (0..self.trials(trials))
            .map(|k| self.run_trial(master, n, k))
            .collect::<Vec<_>>();
        aggregate(self, n, results, tol_scale)
    }
}

fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

/// Aggregated checks of one property at one dimension.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Outcome {
    pub property: String,
    pub n: usize,
    pub trials: usize,
    pub checks: Vec<Check>,
    pub errors: Vec<String>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.errors.is_empty() && self.checks.iter().all(|c| c.pass)
    }

    /// Largest `residual / tolerance` over the checks.
    pub fn worst_ratio(&self) -> f64 {
        self.checks
            .iter()
            .map(|c| if c.tolerance > 0.0 { c.residual / c.tolerance } else if c.residual > 0.0 { f64::INFINITY } else { 0.0 })
            .fold(0.0, f64::max)
    }
}

/// Residuals that are not finite are reported as `f64::MAX` so the report
/// stays serializable; they fail every tolerance.
fn finite(r: f64) -> f64 {
    if r.is_finite() {
        r.abs()
    } else {
        f64::MAX
    }
}

/// Folds per-trial samples into one check per sample name, keeping the
/// maximum residual. A sample name must carry the same tolerance in every
/// trial. Trial errors become failed checks.
pub fn aggregate(p: &Property, n: usize, results: Vec<Result<Vec<Sample>>>, tol_scale: f64) -> Outcome {
    let trials = results.len();
    let mut checks: Vec<Check> = Vec::new();
    let mut errors = Vec::new();
    for (k, r) in results.into_iter().enumerate() {
        match r {
            Ok(samples) => {
                for s in samples {
                    let name = format!("{}/{}/n={n}", p.name, s.name);
                    let residual = finite(s.residual);
                    match checks.iter_mut().find(|c| c.name == name) {
                        Some(c) => c.merge(residual),
                        None => checks.push(Check::new(name, residual, s.tolerance * tol_scale)),
                    }
                }
            }
            Err(e) => errors.push(format!("trial {k}: {e}")),
        }
    }
    if !errors.is_empty() {
        checks.push(Check::new(format!("{}/errors/n={n}", p.name), errors.len() as f64, 0.0));
    }
    Outcome {
        property: p.name.to_string(),
        n,
        trials,
        checks,
        errors,
    }
}

/// All registered properties in a fixed order.
pub fn registry() -> Vec<Property> {
    properties::all()
}

pub fn find(name: &str) -> Option<Property> {
    registry().into_iter().find(|p| p.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique() {
        let r = registry();
        for (k, p) in r.iter().enumerate() {
            assert!(r[k + 1..].iter().all(|q| q.name != p.name), "{}", p.name);
        }
        assert!(r.len() >= 20);
    }

    #[test]
    fn seeds_depend_on_every_coordinate() {
        let p = registry()[0];
        let s = p.seed(1, 2, 3);
        assert_ne!(s, p.seed(2, 2, 3));
        assert_ne!(s, p.seed(1, 3, 3));
        assert_ne!(s, p.seed(1, 2, 4));
        assert_ne!(s, registry()[1].seed(1, 2, 3));
    }

    #[test]
    fn every_property_passes_at_small_dimension() {
        for p in registry() {
            for n in [1, 2] {
                let o = p.run(11, n, 2, 1.0);
                assert!(o.passed(), "{o:?}");
            }
        }
    }

    #[test]
    fn errors_fail_the_outcome() {
        let p = registry()[0];
        let o = aggregate(&p, 2, vec![Err(crate::Error::Precondition("x".into()))], 1.0);
        assert!(!o.passed());
        assert_eq!(o.errors.len(), 1);
    }

    #[test]
    fn non_finite_residuals_fail_and_serialize() {
        let p = registry()[0];
        let o = aggregate(&p, 1, vec![Ok(vec![Sample::new("x", f64::NAN, 1.0)])], 1.0);
        assert!(!o.passed());
        assert!(serde_json::to_string(&o).is_ok());
    }
}
