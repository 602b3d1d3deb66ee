use carath_core::extremal::{
    classify_caratheodory_equality, classify_determinant_equality, classify_equality, extremal_caratheodory,
    extremal_t1_large_w, extremal_t1_small_w, extremal_t2, extremal_t3, Classification, T3Params,
};
use carath_core::functionals::{a_det, bound_a, bound_livingston, livingston};
use carath_core::herglotz::{coefficients, uniform_masses, HerglotzMeasure};
use clap::ValueEnum;
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::report::{Tally, VerificationReport, Witness};
use crate::{CliError, ExtremalArgs};

/// A constructed measure must reach its bound within this tolerance.
pub const EQUALITY_TOL: f64 = 1e-10;
/// Tolerance handed to the classifiers.
const CLASSIFY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Case {
    Caratheodory,
    T1Small,
    T1Large,
    T2,
    T3,
}

impl Case {
    fn name(self) -> &'static str {
        match self {
            Case::Caratheodory => "caratheodory",
            Case::T1Small => "t1-small",
            Case::T1Large => "t1-large",
            Case::T2 => "t2",
            Case::T3 => "t3",
        }
    }

    /// Evaluation point used when `--w` is not given.
    fn default_w(self) -> Complex64 {
        match self {
            Case::T1Large => Complex64::new(2.0, 0.0),
            _ => Complex64::new(0.5, 0.0),
        }
    }
}

struct Built {
    measure: HerglotzMeasure,
    w: Option<Complex64>,
    value: Complex64,
    bound: f64,
    classification: Classification,
    extra: Value,
}

fn build(args: &ExtremalArgs) -> carath_core::Result<Built> {
    let (k, n) = (args.k, args.n);
    let w = args.w.unwrap_or_else(|| args.case.default_w());
    match args.case {
        Case::Caratheodory => {
            let masses = args.masses.clone().unwrap_or_else(|| uniform_masses(n));
            let measure = extremal_caratheodory(n, args.phi, &masses)?;
            let value = coefficients(&measure, n)[n];
            let classification = classify_caratheodory_equality(&measure, n, CLASSIFY_TOL)?;
            Ok(Built { measure, w: None, value, bound: 2.0, classification, extra: json!({}) })
        }
        Case::T1Small => {
            let measure = extremal_t1_small_w(k, n, args.c)?;
            let p = coefficients(&measure, n);
            let value = livingston(&p, k, n, w)?;
            let classification = classify_equality(&measure, k, n, w, CLASSIFY_TOL)?;
            let extra = json!({"p_k": [p[k].re, p[k].im]});
            Ok(Built { measure, w: Some(w), value, bound: bound_livingston(w), classification, extra })
        }
        Case::T1Large => {
            let d = gcd(k, n);
            let masses = args.masses.clone().unwrap_or_else(|| uniform_masses(d.max(1)));
            let measure = extremal_t1_large_w(k, n, args.alpha, &masses)?;
            let value = livingston(&coefficients(&measure, n), k, n, w)?;
            let classification = classify_equality(&measure, k, n, w, CLASSIFY_TOL)?;
            Ok(Built { measure, w: Some(w), value, bound: bound_livingston(w), classification, extra: json!({}) })
        }
        Case::T2 => {
            let measure = extremal_t2(k, n, args.phi)?;
            let value = a_det(&coefficients(&measure, n + k), k, n, w)?;
            let classification = classify_determinant_equality(&measure, k, n, w, CLASSIFY_TOL)?;
            Ok(Built { measure, w: Some(w), value, bound: bound_a(k, w), classification, extra: json!({}) })
        }
        Case::T3 => {
            let params = T3Params {
                k,
                n,
                theta: args.theta,
                phi: args.phi,
                psi: args.psi,
                c: args.c,
                masses_a: args.masses.clone(),
                masses_b: args.masses_b.clone(),
                split: args.split,
            };
            let built = extremal_t3(&params)?;
            let w = (Complex64::new(1.0, 0.0) + Complex64::from_polar(1.0, args.theta)) / 2.0;
            let value = livingston(&coefficients(&built.measure, n), k, n, w)?;
            let classification = classify_equality(&built.measure, k, n, w, CLASSIFY_TOL)?;
            let extra = json!({
                "reduced_k": built.k,
                "first_arc_mass": built.first_arc_mass,
                "second_arc_mass": built.second_arc_mass,
                "first_arc_points": built.first_arc_points,
                "second_arc_points": built.second_arc_points,
                "degenerate": built.degenerate,
            });
            Ok(Built { measure: built.measure, w: Some(w), value, bound: bound_livingston(w), classification, extra })
        }
    }
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn run(args: &ExtremalArgs) -> Result<VerificationReport, CliError> {
    let built = build(args).map_err(|e| CliError::Usage(e.to_string()))?;
    let parameters = json!({
        "case": args.case.name(),
        "k": args.k,
        "n": args.n,
        "w": built.w.map(|w| [w.re, w.im]),
        "phi": args.phi,
        "theta": args.theta,
        "psi": args.psi,
        "c": args.c,
        "alpha": args.alpha,
    });
    let mut report = VerificationReport::new("extremal", parameters, args.common.seed);
    let value = built.value.norm();
    let mut tally = Tally::new(None);
    let err = (value - built.bound).abs();
    tally.record(EQUALITY_TOL - err, 0.0, || Witness {
        input: json!({"measure": built.measure}),
        values: json!({"value": value, "bound": built.bound}),
    });
    tally.into_report(&mut report);
    report.details = Some(json!({
        "measure": built.measure,
        "value": value,
        "functional_value": [built.value.re, built.value.im],
        "bound": built.bound,
        "classification": built.classification,
        "construction": built.extra,
    }));
    Ok(report)
}
