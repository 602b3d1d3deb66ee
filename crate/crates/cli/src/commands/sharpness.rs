use std::f64::consts::TAU;

use carath_core::functionals::Regime;
use carath_core::search::{regime_samples, sweep, Objective, SearchConfig};
use clap::ValueEnum;
use num_complex::Complex64;
use serde_json::json;

use crate::report::{Tally, VerificationReport, Witness};
use crate::{CliError, SharpnessArgs};

/// A gap below this is reported as a violation: the bound was exceeded.
pub const NEGATIVE_GAP_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Functional {
    Livingston,
    #[value(name = "A")]
    A,
    Brown,
}

impl Functional {
    fn name(self) -> &'static str {
        match self {
            Functional::Livingston => "livingston",
            Functional::A => "A",
            Functional::Brown => "brown",
        }
    }
}

/// The objectives a sharpness run sweeps over, in report order.
pub fn objectives(args: &SharpnessArgs) -> Vec<Objective> {
    match args.functional {
        Functional::Brown => {
            let nus = if args.nu.is_empty() {
                (0..16).map(|j| TAU * j as f64 / 16.0).collect()
            } else {
                args.nu.clone()
            };
            nus.into_iter()
                .map(|nu| Objective::Brown { n: args.n, m: args.m, nu })
                .collect()
        }
        f => {
            let ws: Vec<Complex64> = if args.w.is_empty() {
                [Regime::Inside, Regime::Boundary, Regime::Outside]
                    .into_iter()
                    .flat_map(|r| regime_samples(r, args.samples_per_regime))
                    .collect()
            } else {
                args.w.clone()
            };
            ws.into_iter()
                .map(|w| match f {
                    Functional::Livingston => Objective::Livingston { k: args.k, n: args.n, w },
                    _ => Objective::Determinant { k: args.k, n: args.n, w },
                })
                .collect()
        }
    }
}

pub fn run(args: &SharpnessArgs) -> Result<VerificationReport, CliError> {
    let objectives = objectives(args);
    let first = objectives
        .first()
        .ok_or_else(|| CliError::Usage("no grid points: pass --w / --nu or a positive --samples-per-regime".into()))?;
    first.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    let defaults = SearchConfig::for_objective(first, args.common.seed);
    let cfg = SearchConfig {
        atom_count: args.atoms.unwrap_or(defaults.atom_count),
        restarts: args.restarts,
        max_iterations: args.max_iterations,
        step_tolerance: args.step_tol,
        seed: args.common.seed,
        warm_start: !args.no_warm_start,
    };
    cfg.validate().map_err(|e| CliError::Usage(e.to_string()))?;

    let parameters = json!({
        "functional": args.functional.name(),
        "k": args.k,
        "n": args.n,
        "m": args.m,
        "gap_tol": args.gap_tol,
        "config": cfg,
    });
    let mut report = VerificationReport::new("sharpness", parameters, args.common.seed);
    let results = sweep(&objectives, &cfg).map_err(|e| CliError::Usage(e.to_string()))?;

    let mut tally = Tally::new(None);
    let mut points = Vec::with_capacity(results.len());
    for (objective, r) in objectives.iter().zip(&results) {
        let violated = r.gap > args.gap_tol || !(r.gap >= -NEGATIVE_GAP_TOL);
        tally.record_with(r.gap, violated, || Witness {
            input: json!({"objective": objective}),
            values: json!({"best_value": r.best_value, "bound": r.bound, "gap": r.gap}),
        });
        points.push(json!({"objective": objective, "result": r}));
    }
    tally.into_report(&mut report);
    report.details = Some(json!({ "points": points }));
    Ok(report)
}
