use std::path::Path;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Map, Value};

use quatred::algebra::classify::{classification_checks, classify_irreducible, irreducibility};
use quatred::algebra::reduce::{reduce_system, ComplexSystem, ReductionReport};
use quatred::dynamics::{counitary_demo, evolution_trace, transition_probs, TransitionProbs};
use quatred::functors::{extend_from_plus, split_plus_minus, SplitSpace};
use quatred::linalg::embed::quaternionify_complex;
use quatred::random::{cmatrix, complex64, rng, unit_qvector, unit_quaternion, unitary, Rand};
use quatred::suite::{aggregate, registry, Outcome};
use quatred::{Check, Error, Frame, Hamiltonian, ImaginaryUnit, QMatrix, QVector, StarAlgebra};

use crate::report::{scaled, Report};
use crate::{Axis, Demo, Options};

/// Residual tolerance of the structural checks emitted by the commands.
const CHECK_TOL: f64 = 1e-9;
/// Exact probability identities.
const PROB_TOL: f64 = 1e-12;
/// Minimal separation of the candidate left actions.
const SEPARATION: f64 = 0.1;
const ADLER_DIM: usize = 4;
const COUNITARY_DIM: usize = 3;

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).unwrap_or(Value::Null)
}

fn conj_by(u: &QMatrix, m: &QMatrix) -> QMatrix {
    &(u * m) * &u.adjoint()
}

pub fn verify(o: &Options) -> Report {
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(o.jobs).build() {
        Ok(p) => p,
        Err(e) => return Report::error("verify", "Usage", format!("cannot start {} workers: {e}", o.jobs)),
    };
    let props = registry();
    let cells: Vec<_> = props.iter().flat_map(|p| o.dims.iter().map(move |&n| (p, n))).collect();
    // results keep cell and trial order whatever the schedule
    let outcomes: Vec<Outcome> = pool.install(|| {
        cells
            .par_iter()
            .map(|&(p, n)| {
                let results = (0..p.trials(o.trials))
                    .into_par_iter()
                    .map(|k| {
                        std::panic::catch_unwind(|| p.run_trial(o.seed, n, k))
                            .unwrap_or_else(|_| Err(Error::InternalInconsistency("trial panicked".into())))
                    })
                    .collect();
                aggregate(p, n, results, o.tol_scale)
            })
            .collect()
    });
    let summary: Vec<Value> = outcomes
        .iter()
        .map(|x| {
            json!({
                "property": x.property,
                "n": x.n,
                "trials": x.trials,
                "passed": x.passed(),
                "worst_ratio": if x.worst_ratio().is_finite() { x.worst_ratio() } else { f64::MAX },
                "errors": x.errors,
            })
        })
        .collect();
    let mut artifacts = Map::new();
    artifacts.insert("seed".into(), json!(o.seed));
    artifacts.insert("dims".into(), json!(o.dims));
    artifacts.insert("trials".into(), json!(o.trials));
    artifacts.insert("tol_scale".into(), json!(o.tol_scale));
    artifacts.insert("properties".into(), Value::Array(summary));
    let checks = outcomes.into_iter().flat_map(|x| x.checks).collect();
    Report::new("verify", checks, artifacts)
}

/// Reads either a bare `StarAlgebra` or `{"algebra": .., "evolution": [..]}`.
fn load(command: &str, path: &Path) -> Result<(StarAlgebra, Vec<QMatrix>), Report> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Report::error(command, "Input", format!("cannot read {}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| Report::error(command, "Input", format!("malformed JSON in {}: {e}", path.display())))?;
    let bad = |e: serde_json::Error| Report::error(command, "Input", format!("invalid input {}: {e}", path.display()));
    match value.get("algebra") {
        Some(a) => {
            let algebra = serde_json::from_value(a.clone()).map_err(bad)?;
            let evolution = match value.get("evolution") {
                Some(e) => serde_json::from_value(e.clone()).map_err(bad)?,
                None => Vec::new(),
            };
            Ok((algebra, evolution))
        }
        None => Ok((serde_json::from_value(value).map_err(bad)?, Vec::new())),
    }
}

pub fn classify(path: &Path, o: &Options) -> Report {
    let (a, _) = match load("classify", path) {
        Ok(x) => x,
        Err(r) => return r,
    };
    let c = a.commutant();
    let mut checks = vec![
        Check::new("commutant_commutes", c.commutation_residual(a.generators()), CHECK_TOL),
        Check::new("commutant_orthonormal", c.orthonormality_residual(), CHECK_TOL),
    ];
    let mut artifacts = Map::new();
    artifacts.insert("n".into(), json!(a.n()));
    artifacts.insert("commutant_dim".into(), json!(c.dim_r));
    let irr = irreducibility(&a);
    if !irr.irreducible {
        checks.push(Check::new("irreducible", 1.0, 0.0));
        artifacts.insert("witness".into(), to_value(&irr.witness));
        return Report::new("classify", scaled(checks, o.tol_scale), artifacts);
    }
    let cls = match classify_irreducible(&a) {
        Ok(x) => x,
        Err(e) => return Report::from(("classify", e)),
    };
    checks.push(Check::new("irreducible", 0.0, 0.0));
    checks.extend(classification_checks(&a, &cls));
    artifacts.insert("kind".into(), to_value(&cls.kind));
    artifacts.insert("classification".into(), to_value(&cls));
    Report::new("classify", scaled(checks, o.tol_scale), artifacts)
}

fn axis_unit(axis: Axis) -> ImaginaryUnit {
    match axis {
        Axis::X => ImaginaryUnit::E1,
        Axis::Y => ImaginaryUnit::E2,
        Axis::Z => ImaginaryUnit::E3,
    }
}

/// Largest relative distance between matching matrices of two systems.
fn system_distance(a: &ComplexSystem, b: &ComplexSystem) -> f64 {
    let lists = [
        (&a.generators, &b.generators),
        (&a.projections, &b.projections),
        (&a.evolution, &b.evolution),
    ];
    let mut worst = if a.n == b.n { 0.0f64 } else { f64::INFINITY };
    for (x, y) in lists {
        if x.len() != y.len() {
            return f64::INFINITY;
        }
        for (p, q) in x.iter().zip(y) {
            worst = worst.max((&p.0 - &q.0).norm() / p.0.norm().max(1.0));
        }
    }
    worst
}

/// Re-extends the reduced system through the split and reduces it again.
fn rereduce(r: &ReductionReport, n: usize, i: ImaginaryUnit) -> quatred::Result<ReductionReport> {
    let extend = |ms: &[quatred::ComplexMatrix]| -> quatred::Result<Vec<QMatrix>> {
        ms.iter().map(|m| extend_from_plus(&m.0, &r.split)).collect()
    };
    let a = StarAlgebra::new(n, extend(&r.system.generators)?)?;
    reduce_system(&a, &extend(&r.system.evolution)?, i)
}

pub fn reduce(path: &Path, axis: Axis, o: &Options) -> Report {
    let (a, evolution) = match load("reduce", path) {
        Ok(x) => x,
        Err(r) => return r,
    };
    let i = axis_unit(axis);
    let r = match reduce_system(&a, &evolution, i) {
        Ok(r) => r,
        Err(e) => return Report::from(("reduce", e)),
    };
    let mut checks = r.certificates.clone();
    checks.push(Check::new("complex_dimension", (r.system.n as f64 - a.n() as f64).abs(), 0.0));
    let again = match rereduce(&r, a.n(), i) {
        Ok(x) => system_distance(&r.system, &x.system),
        Err(_) => f64::INFINITY,
    };
    checks.push(Check::new("idempotent", again, CHECK_TOL));
    let output = json!({ "split": r.split, "system": r.system });
    if let Some(out) = &o.output {
        let text = serde_json::to_string_pretty(&output).unwrap_or_default();
        if let Err(e) = std::fs::write(out, text) {
            return Report::error("reduce", "Output", format!("cannot write {}: {e}", out.display()));
        }
    }
    let mut artifacts = Map::new();
    artifacts.insert("axis".into(), to_value(&i.direction()));
    artifacts.insert("ranks".into(), json!(r.ranks));
    artifacts.insert("split".into(), output["split"].clone());
    artifacts.insert("system".into(), output["system"].clone());
    if let Some(out) = &o.output {
        artifacts.insert("output".into(), json!(out.display().to_string()));
    }
    Report::new("reduce", scaled(checks, o.tol_scale), artifacts)
}

pub fn demo(which: Demo, o: &Options) -> Report {
    let r = match which {
        Demo::Adler => adler(o),
        Demo::Counitary => counitary(o),
    };
    r.unwrap_or_else(|e| Report::from(("demo", e)))
}

fn row(label: String, p: TransitionProbs) -> Value {
    json!({ "pair": label, "pC": p.pc, "pS": p.ps, "pH": p.ph })
}

fn print_table(title: &str, rows: &[Value]) {
    eprintln!("{title}");
    eprintln!("  {:<10} {:>12} {:>12} {:>12}", "pair", "pC", "pS", "pH");
    for r in rows {
        let f = |k: &str| r[k].as_f64().unwrap_or(f64::NAN);
        eprintln!(
            "  {:<10} {:>12.3e} {:>12.3e} {:>12.3e}",
            r["pair"].as_str().unwrap_or(""),
            f("pC"),
            f("pS"),
            f("pH")
        );
    }
}

fn plus_vector(g: &mut Rand, s: &SplitSpace) -> Option<QVector> {
    let n = s.j.n();
    s.plus_basis
        .iter()
        .fold(QVector::zeros(n), |acc, b| &acc + &b.mul_right(s.i.complex(complex64(g))))
        .normalized()
}

/// Complex and symplectic transition probabilities on a 4-dimensional system
/// whose Hamiltonian commutes with a planted complex structure `J`.
fn adler(o: &Options) -> quatred::Result<Report> {
    let mut g = rng(o.seed);
    let n = ADLER_DIM;
    let f = Frame::standard();
    let u = unitary(&mut g, n);
    let m = cmatrix(&mut g, n, n);
    let anti = (&m - m.adjoint()) * Complex64::new(0.5, 0.0);
    let h = conj_by(&u, &quaternionify_complex(&anti, &f)?);
    let j = conj_by(&u, &QMatrix::scalar(n, f.i().as_quaternion()));
    let ham = Hamiltonian::new(h.clone(), f)?;
    let s = split_plus_minus(&j, f.i())?;
    let jq = f.j().as_quaternion();
    let mut checks = vec![Check::new("hamiltonian_commutes_with_J", h.commutator(&j).fro_norm(), CHECK_TOL)];

    let mut pairs = Vec::new();
    let mut worst = 0.0f64;
    for k in 0..4 {
        let v = unit_qvector(&mut g, n);
        let p = transition_probs(&v, &v.mul_right(jq), &f)?;
        worst = worst.max(p.pc.abs()).max((p.ps - 1.0).abs()).max((p.ph - 1.0).abs());
        pairs.push(row(format!("v{k}, v{k}j"), p));
    }
    checks.push(Check::new("v_vj_is_0_1_1", worst, PROB_TOL));

    let mut generic = Vec::new();
    let mut sum = 0.0f64;
    for k in 0..4 {
        let (v, w) = (unit_qvector(&mut g, n), unit_qvector(&mut g, n));
        let p = transition_probs(&v, &w, &f)?;
        sum = sum.max((p.pc + p.ps - p.ph).abs());
        generic.push(row(format!("v{k}, w{k}"), p));
    }
    checks.push(Check::new("pC_plus_pS_is_pH", sum, PROB_TOL));

    let fr = s.frame();
    let mut plus = Vec::new();
    let (mut ps, mut gap) = (0.0f64, 0.0f64);
    for k in 0..6 {
        let missing = || Error::InternalInconsistency("zero vector in H⁺".into());
        let v = plus_vector(&mut g, &s).ok_or_else(missing)?;
        let w = plus_vector(&mut g, &s).ok_or_else(missing)?;
        let p = transition_probs(&v, &w, &fr)?;
        ps = ps.max(p.ps);
        gap = gap.max((p.ph - p.pc).abs());
        plus.push(row(format!("p{k}, q{k}"), p));
    }
    checks.push(Check::new("plus_pS_vanishes", ps, PROB_TOL));
    checks.push(Check::new("plus_pC_equals_pH", gap, PROB_TOL));

    let v0 = plus_vector(&mut g, &s).ok_or_else(|| Error::InternalInconsistency("zero vector in H⁺".into()))?;
    let times: Vec<f64> = (0..=10).map(|k| 0.5 * k as f64).collect();
    let trace = evolution_trace(&ham, &v0, &times)?;
    let norm = trace.norms.iter().map(|x| (x - 1.0).abs()).fold(0.0, f64::max);
    let stays = trace
        .states
        .iter()
        .map(|v| (&j.apply(v) - &v.mul_right(f.i().as_quaternion())).norm())
        .fold(0.0, f64::max);
    checks.push(Check::new("trace_norm_preserved", norm, CHECK_TOL));
    checks.push(Check::new("trace_stays_in_plus", stays, CHECK_TOL));

    print_table("(v, vj) pairs: orthogonal in the complex system", &pairs);
    print_table("generic pairs", &generic);
    print_table("pairs in H⁺", &plus);
    eprintln!("evolution in H⁺: max |‖v(t)‖ - 1| = {norm:.3e}, max ‖Jv(t) - v(t)i‖ = {stays:.3e}");

    let mut artifacts = Map::new();
    artifacts.insert("demo".into(), json!("adler"));
    artifacts.insert("seed".into(), json!(o.seed));
    artifacts.insert("n".into(), json!(n));
    artifacts.insert("v_vj".into(), Value::Array(pairs));
    artifacts.insert("generic".into(), Value::Array(generic));
    artifacts.insert("plus".into(), Value::Array(plus));
    artifacts.insert("trace".into(), to_value(&trace));
    Ok(Report::new("demo", scaled(checks, o.tol_scale), artifacts))
}

/// Three random unitaries composed with one inner automorphism.
fn counitary(o: &Options) -> quatred::Result<Report> {
    let mut g = rng(o.seed);
    let h = unit_quaternion(&mut g);
    let us: Vec<QMatrix> = (0..3).map(|_| unitary(&mut g, COUNITARY_DIM)).collect();
    let r = counitary_demo(h, &us)?;
    let mut checks = r.rmqq.clone();
    let closest = r.distances.iter().map(|d| d.modulo_sign).fold(f64::INFINITY, f64::min);
    checks.push(Check::new("actions_differ", (SEPARATION - closest).max(0.0), 0.0));
    eprintln!("candidate left actions v -> U_phi(v) h, h = {:?}", [h.w, h.x, h.y, h.z]);
    eprintln!("  {:<6} {:>12} {:>12}", "pair", "raw", "mod sign");
    for d in &r.distances {
        eprintln!("  {:<6} {:>12.4} {:>12.4}", format!("{},{}", d.a, d.b), d.raw, d.modulo_sign);
    }
    let mut artifacts = Map::new();
    artifacts.insert("demo".into(), json!("counitary"));
    artifacts.insert("seed".into(), json!(o.seed));
    artifacts.insert("n".into(), json!(COUNITARY_DIM));
    artifacts.insert("report".into(), to_value(&r));
    Ok(Report::new("demo", scaled(checks, o.tol_scale), artifacts))
}
