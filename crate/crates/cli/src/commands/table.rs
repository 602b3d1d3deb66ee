use std::fmt::Write;

use carath_core::functionals::{bound_a, bound_livingston, regime_modulus, w_grid};
use carath_core::search::{sweep, Objective, SearchConfig};
use num_complex::Complex64;

use crate::{CliError, TableArgs};

/// Iterations per restart in the quick search.
const QUICK_ITERATIONS: usize = 1500;

/// Shortest representation that reads back to the same double, matching
/// the JSON reports.
pub fn format_float(x: f64) -> String {
    serde_json::to_string(&x).expect("table values are finite")
}

/// Renders the bound table as CSV with a header row and LF line endings.
pub fn run(args: &TableArgs) -> Result<String, CliError> {
    if args.max_k == 0 {
        return Err(CliError::Usage("--max-k must be at least 1".into()));
    }
    let ws: Vec<Complex64> = if args.w.is_empty() { w_grid() } else { args.w.clone() };
    let objectives: Vec<Objective> = ws.iter().map(|&w| Objective::Livingston { k: args.k, n: args.n, w }).collect();
    objectives[0].validate().map_err(|e| CliError::Usage(e.to_string()))?;
    let cfg = SearchConfig {
        restarts: args.restarts,
        max_iterations: QUICK_ITERATIONS,
        ..SearchConfig::for_objective(&objectives[0], args.seed)
    };
    cfg.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    let results = sweep(&objectives, &cfg).map_err(|e| CliError::Usage(e.to_string()))?;

    let mut out = String::from("re_w,im_w,abs_1m2w,bound_T1");
    for k in 1..=args.max_k {
        write!(out, ",bound_T2_{k}").expect("writing to a String");
    }
    out.push_str(",best_found,gap\n");
    for (w, r) in ws.iter().zip(&results) {
        let mut cells = vec![w.re, w.im, regime_modulus(*w), bound_livingston(*w)];
        cells.extend((1..=args.max_k).map(|k| bound_a(k, *w)));
        cells.extend([r.best_value, r.gap]);
        let row: Vec<String> = cells.iter().map(|&x| format_float(x)).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    Ok(out)
}
