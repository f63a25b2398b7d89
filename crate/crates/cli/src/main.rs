//! `quatred`: verification, classification, reduction and demos.
//!
//! Every command prints a JSON report on stdout and a summary on stderr.
//! Exit codes: 0 pass, 1 check failure, 2 usage or input error.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use report::{Report, Status};

#[derive(Debug, Parser)]
#[command(name = "quatred", version, about = "Quaternionic operator algebras and their complex reductions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Master seed for every random choice.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Quaternionic dimensions for `verify`, each in 1..=8.
    #[arg(long, global = true, value_delimiter = ',', default_value = "1,2,3,4")]
    dims: Vec<usize>,
    /// Trials per property and dimension.
    #[arg(long, global = true, default_value_t = 20)]
    trials: usize,
    /// Multiplier on every default tolerance.
    #[arg(long, global = true, default_value_t = 1.0)]
    tol: f64,
    /// Worker threads for independent trials.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// File receiving the command's main artifact.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run every registered property.
    Verify,
    /// Classify an irreducible *-algebra read from JSON.
    Classify { input: PathBuf },
    /// Reduce a complex-induced system to its complex form.
    Reduce {
        input: PathBuf,
        /// Imaginary unit of the complex scalars of `H⁺`.
        #[arg(long, value_enum, default_value_t = Axis::X)]
        axis: Axis,
    },
    /// Worked examples.
    Demo { which: Demo },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Axis {
    X,
    Y,
    Z,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Demo {
    Adler,
    Counitary,
}

/// Options shared by every command after validation.
#[derive(Debug, Clone)]
pub struct Options {
    pub seed: u64,
    pub dims: Vec<usize>,
    pub trials: usize,
    pub tol_scale: f64,
    pub jobs: usize,
    pub output: Option<PathBuf>,
}

fn options(cli: &Cli) -> Result<Options, String> {
    if cli.dims.is_empty() || cli.dims.iter().any(|&n| !(1..=8).contains(&n)) {
        return Err(format!("--dims must list integers in 1..=8, got {:?}", cli.dims));
    }
    if cli.trials == 0 {
        return Err("--trials must be at least 1".into());
    }
    if cli.jobs == 0 {
        return Err("--jobs must be at least 1".into());
    }
    if !(cli.tol.is_finite() && cli.tol > 0.0) {
        return Err(format!("--tol must be a positive number, got {}", cli.tol));
    }
    let env = match std::env::var("QR_TOL_SCALE") {
        Ok(s) => match s.trim().parse::<f64>() {
            Ok(x) if x.is_finite() && x > 0.0 => x,
            _ => return Err(format!("QR_TOL_SCALE must be a positive number, got {s:?}")),
        },
        Err(_) => 1.0,
    };
    Ok(Options {
        seed: cli.seed,
        dims: cli.dims.clone(),
        trials: cli.trials,
        tol_scale: cli.tol * env,
        jobs: cli.jobs,
        output: cli.output.clone(),
    })
}

fn run(cli: &Cli) -> Report {
    let name = match &cli.command {
        Command::Verify => "verify",
        Command::Classify { .. } => "classify",
        Command::Reduce { .. } => "reduce",
        Command::Demo { .. } => "demo",
    };
    let opts = match options(cli) {
        Ok(o) => o,
        Err(msg) => return Report::error(name, "Usage", msg),
    };
    match &cli.command {
        Command::Verify => commands::verify(&opts),
        Command::Classify { input } => commands::classify(input, &opts),
        Command::Reduce { input, axis } => commands::reduce(input, *axis, &opts),
        Command::Demo { which } => commands::demo(*which, &opts),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match std::panic::catch_unwind(|| run(&cli)) {
        Ok(r) => r,
        Err(_) => Report::error("internal", "Panic", "unexpected panic; see stderr"),
    };
    match serde_json::to_string_pretty(&report) {
        Ok(json) => println!("{json}"),
        Err(e) => {
            eprintln!("failed to serialize report: {e}");
            return ExitCode::from(2);
        }
    }
    let failed = report.failed().count();
    match report.status {
        Status::Error => eprintln!(
            "{}: error: {}",
            report.command,
            report.artifacts.get("message").and_then(|m| m.as_str()).unwrap_or("unknown")
        ),
        _ => eprintln!(
            "{}: {:?} ({} checks, {} failed)",
            report.command,
            report.status,
            report.checks.len(),
            failed
        ),
    }
    for c in report.failed().take(20) {
        eprintln!("  FAIL {} residual={:.3e} tolerance={:.3e}", c.name, c.residual, c.tolerance);
    }
    report.status.exit_code()
}
