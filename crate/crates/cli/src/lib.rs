//! Command-line front end: verification sweeps, sharpness searches,
//! extremal constructions and bound tables, with reproducible JSON and CSV
//! output. Exit codes: 0 pass, 1 violation found, 2 usage or parameter error.

// `!(x >= t)` style checks are deliberate: they also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod complex_arg;
pub mod report;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

pub use commands::extremal::Case;
pub use commands::sharpness::Functional;
pub use commands::verify::Suite;
pub use complex_arg::parse_complex;
pub use report::{Tally, VerificationReport, Witness};

/// Witness logging threshold for `--log-near-equality`.
pub const NEAR_EQUALITY_SLACK: f64 = 1e-3;

pub const EXIT_PASS: u8 = 0;
pub const EXIT_VIOLATION: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(std::io::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

#[derive(Debug, Parser)]
#[command(name = "carath", version, about = "Coefficient bounds for functions with positive real part")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the bounds on random measures across the w-grid.
    Verify(VerifyArgs),
    /// Maximize a functional numerically and report the gap to its bound.
    Sharpness(SharpnessArgs),
    /// Build an equality measure, evaluate it and classify the equality.
    Extremal(ExtremalArgs),
    /// Print bounds and quick-search maxima over a grid of w as CSV.
    Table(TableArgs),
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the JSON report to this path instead of standard output.
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Record wall time in `runtime_ms` (otherwise 0, keeping output reproducible).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    /// Number of random measures.
    #[arg(long, default_value_t = 1000)]
    pub trials: u64,
    #[arg(long, default_value_t = 6)]
    pub max_n: usize,
    #[arg(long, default_value_t = 4)]
    pub max_k: usize,
    /// Atom counts are drawn uniformly from 1..=max-atoms.
    #[arg(long, default_value_t = 8)]
    pub max_atoms: usize,
    /// Keep witnesses whose slack is below 1e-3 even when they pass.
    #[arg(long)]
    pub log_near_equality: bool,
}

#[derive(Debug, Clone, Args)]
pub struct SharpnessArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long, value_enum)]
    pub functional: Functional,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    /// Shift for the Brown functional.
    #[arg(long, default_value_t = 1)]
    pub m: usize,
    /// Points to search at (repeatable); defaults to samples of all three regimes.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub w: Vec<Complex64>,
    /// Rotations for the Brown functional (repeatable); defaults to 16 equally spaced.
    #[arg(long, allow_hyphen_values = true)]
    pub nu: Vec<f64>,
    /// Samples per regime when no --w is given.
    #[arg(long, default_value_t = 8)]
    pub samples_per_regime: usize,
    #[arg(long, default_value_t = 30)]
    pub restarts: usize,
    /// Atoms per measure; defaults to n + k.
    #[arg(long)]
    pub atoms: Option<usize>,
    #[arg(long, default_value_t = 4000)]
    pub max_iterations: usize,
    #[arg(long, default_value_t = 1e-10)]
    pub step_tol: f64,
    /// Use random starts only.
    #[arg(long)]
    pub no_warm_start: bool,
    #[arg(long, default_value_t = 1e-4)]
    pub gap_tol: f64,
}

#[derive(Debug, Clone, Args)]
pub struct ExtremalArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long, value_enum)]
    pub case: Case,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    /// Evaluation point (t1-small, t1-large, t2); t3 derives w from theta.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub w: Option<Complex64>,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub phi: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub theta: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub psi: f64,
    /// Target argument of the functional value.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub c: f64,
    /// Rotation of the gcd(k, n)-coset for t1-large.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub alpha: f64,
    /// Comma-separated masses (caratheodory, t1-large, first t3 set).
    #[arg(long, value_delimiter = ',')]
    pub masses: Option<Vec<f64>>,
    /// Comma-separated masses for the second t3 set.
    #[arg(long, value_delimiter = ',')]
    pub masses_b: Option<Vec<f64>>,
    /// Share of the first t3 set when the two sets coincide.
    #[arg(long)]
    pub split: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct TableArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Columns bound_T2_1 .. bound_T2_K.
    #[arg(long, default_value_t = 3)]
    pub max_k: usize,
    /// Livingston functional used for the quick search.
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long, default_value_t = 4)]
    pub restarts: usize,
    /// Rows to print (repeatable); defaults to the standard 193-point grid.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub w: Vec<Complex64>,
}

fn finish(mut report: VerificationReport, common: &CommonArgs, start: Instant) -> Result<u8, CliError> {
    if common.timing {
        report.runtime_ms = start.elapsed().as_millis() as u64;
    }
    report.emit(common.json.as_deref()).map_err(CliError::Io)?;
    if common.json.is_some() {
        eprintln!(
            "{}: {} cases, {} violations",
            report.command, report.cases_run, report.violations
        );
    }
    Ok(if report.passed() { EXIT_PASS } else { EXIT_VIOLATION })
}

/// Runs a parsed command and returns its exit code.
pub fn run(cli: Cli) -> Result<u8, CliError> {
    let start = Instant::now();
    match cli.command {
        Command::Verify(args) => finish(commands::verify::run(&args)?, &args.common, start),
        Command::Sharpness(args) => finish(commands::sharpness::run(&args)?, &args.common, start),
        Command::Extremal(args) => finish(commands::extremal::run(&args)?, &args.common, start),
        Command::Table(args) => {
            let csv = commands::table::run(&args)?;
            print!("{csv}");
            Ok(EXIT_PASS)
        }
    }
}
