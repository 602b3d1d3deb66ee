use std::f64::consts::TAU;

use carath_core::extremal::extremal_caratheodory;
use carath_core::functionals::{a_delsarte, a_det, a_herglotz, bound_a, bound_livingston, brown, livingston, w_grid};
use carath_core::herglotz::{coefficients, random_measure_with, uniform_masses, CoeffSeries, HerglotzMeasure};
use carath_core::schwarz::{
    coefficient_relations_check, corollary_crosscheck, corollary_values, lambda_grid, schwarz_pick_warmup,
    self_map_from_measure,
};
use clap::ValueEnum;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::report::{Tally, VerificationReport, Witness};
use crate::{CliError, VerifyArgs};

/// Tolerance for `|p_n| <= 2`.
const CARATHEODORY_TOL: f64 = 1e-12;
/// Tolerance for the functional bounds.
const BOUND_TOL: f64 = 1e-9;
/// Relative agreement required between the three `A_{k,n}` routes.
const ORACLE_REL: f64 = 1e-10;
const CROSSCHECK_TOL: f64 = 1e-10;
const RELATIONS_TOL: f64 = 1e-12;
/// Number of equally spaced rotations `nu` in the Brown sweep.
const NU_STEPS: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Caratheodory,
    Livingston,
    Determinant,
    Brown,
    Schwarz,
    Oracle,
}

impl Suite {
    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }

    fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Caratheodory => "caratheodory",
            Suite::Livingston => "livingston",
            Suite::Determinant => "determinant",
            Suite::Brown => "brown",
            Suite::Schwarz => "schwarz",
            Suite::Oracle => "oracle",
        }
    }
}

struct Sweep<'a> {
    args: &'a VerifyArgs,
    grid: Vec<Complex64>,
    tally: Tally,
}

fn c_json(z: Complex64) -> serde_json::Value {
    json!([z.re, z.im])
}

impl Sweep<'_> {
    fn caratheodory(&mut self, mu: &HerglotzMeasure, p: &CoeffSeries) {
        for n in 1..=self.args.max_n {
            let lhs = p[n].norm();
            self.tally.record(2.0 - lhs, CARATHEODORY_TOL, || Witness {
                input: json!({"suite": "caratheodory", "n": n, "measure": mu}),
                values: json!({"lhs": lhs, "rhs": 2.0}),
            });
        }
    }

    fn livingston(&mut self, mu: &HerglotzMeasure, p: &CoeffSeries) {
        for n in 2..=self.args.max_n {
            for k in 1..n {
                for &w in &self.grid {
                    let lhs = livingston(p, k, n, w).expect("indices in range").norm();
                    let rhs = bound_livingston(w);
                    self.tally.record(rhs - lhs, BOUND_TOL, || Witness {
                        input: json!({"suite": "livingston", "k": k, "n": n, "w": c_json(w), "measure": mu}),
                        values: json!({"lhs": lhs, "rhs": rhs}),
                    });
                }
            }
        }
    }

    fn determinant(&mut self, mu: &HerglotzMeasure, p: &CoeffSeries) {
        for k in 1..=self.args.max_k {
            for n in 1..=self.args.max_n {
                for &w in &self.grid {
                    let lhs = a_det(p, k, n, w).expect("indices in range").norm();
                    let rhs = bound_a(k, w);
                    self.tally.record(rhs - lhs, BOUND_TOL, || Witness {
                        input: json!({"suite": "determinant", "k": k, "n": n, "w": c_json(w), "measure": mu}),
                        values: json!({"lhs": lhs, "rhs": rhs}),
                    });
                }
            }
        }
    }

    fn brown(&mut self, mu: &HerglotzMeasure, p: &CoeffSeries) {
        for n in 1..=self.args.max_n {
            for m in 1..=self.args.max_n {
                for j in 0..NU_STEPS {
                    let nu = TAU * j as f64 / NU_STEPS as f64;
                    let input = || json!({"suite": "brown", "n": n, "m": m, "nu": nu, "measure": mu});
                    match brown(p, n, m, nu) {
                        Ok(ineq) => self.tally.record(ineq.slack(), BOUND_TOL, || Witness {
                            input: input(),
                            values: json!({"lhs": ineq.lhs, "rhs": ineq.rhs}),
                        }),
                        Err(e) => self.tally.record_failure(Witness {
                            input: input(),
                            values: json!({"error": e.to_string()}),
                        }),
                    }
                }
            }
        }
    }

    fn schwarz(&mut self, mu: &HerglotzMeasure) {
        let a = self_map_from_measure(mu, 4);
        let p = coefficients(mu, 4);
        let residual = coefficient_relations_check(&a, &p).expect("degree 4");
        self.tally.record(RELATIONS_TOL - residual, 0.0, || Witness {
            input: json!({"suite": "schwarz", "check": "relations", "measure": mu}),
            values: json!({"residual": residual}),
        });
        for lambda in lambda_grid() {
            let input = |check: &str| json!({"suite": "schwarz", "check": check, "lambda": c_json(lambda), "measure": mu});
            let warm = schwarz_pick_warmup(&a, lambda).expect("degree 4");
            self.tally.record(warm.slack(), BOUND_TOL, || Witness {
                input: input("warmup"),
                values: json!({"lhs": warm.lhs, "rhs": warm.rhs}),
            });
            let values = corollary_values(&a, lambda).expect("a_0 = 0 and degree 4");
            for (i, ineq) in values.iter().enumerate() {
                self.tally.record(ineq.slack(), BOUND_TOL, || Witness {
                    input: input(&format!("self{}", i + 1)),
                    values: json!({"lhs": ineq.lhs, "rhs": ineq.rhs}),
                });
            }
            let residual = corollary_crosscheck(mu, lambda);
            self.tally.record(CROSSCHECK_TOL - residual, 0.0, || Witness {
                input: input("crosscheck"),
                values: json!({"residual": residual}),
            });
        }
    }

    fn oracle(&mut self, mu: &HerglotzMeasure, p: &CoeffSeries, rng: &mut ChaCha8Rng) {
        let w = Complex64::new(rng.gen_range(-1.0..2.0), rng.gen_range(-1.5..1.5));
        for k in 1..=self.args.max_k {
            for n in 1..=self.args.max_n {
                let det = a_det(p, k, n, w).expect("indices in range");
                let mut routes = vec![("herglotz", a_herglotz(mu, k, n, w).expect("k, n >= 1"))];
                if n > k {
                    routes.push(("delsarte", a_delsarte(p, k, n, w).expect("n >= k + 1")));
                }
                for (route, other) in routes {
                    let err = (det - other).norm();
                    let allowed = ORACLE_REL * det.norm().max(other.norm()).max(1.0);
                    self.tally.record(allowed - err, 0.0, || Witness {
                        input: json!({"suite": "oracle", "route": route, "k": k, "n": n, "w": c_json(w), "measure": mu}),
                        values: json!({"det": c_json(det), "other": c_json(other), "error": err}),
                    });
                }
            }
        }
    }
}

pub fn run(args: &VerifyArgs) -> Result<VerificationReport, CliError> {
    if args.max_atoms == 0 {
        return Err(CliError::Usage("--max-atoms must be at least 1".into()));
    }
    if args.max_n == 0 || args.max_k == 0 {
        return Err(CliError::Usage("--max-n and --max-k must be at least 1".into()));
    }
    let suite = args.suite;
    let parameters = json!({
        "suite": suite.name(),
        "trials": args.trials,
        "max_n": args.max_n,
        "max_k": args.max_k,
        "max_atoms": args.max_atoms,
        "log_near_equality": args.log_near_equality,
    });
    let mut report = VerificationReport::new("verify", parameters, args.common.seed);
    let mut sweep = Sweep {
        args,
        grid: w_grid(),
        tally: Tally::new(args.log_near_equality.then_some(crate::NEAR_EQUALITY_SLACK)),
    };

    // the equality configurations are checked once, independent of the trials
    if suite.includes(Suite::Caratheodory) && args.trials > 0 {
        for n in 1..=args.max_n {
            let mu = extremal_caratheodory(n, 0.0, &uniform_masses(n)).expect("uniform masses");
            let value = coefficients(&mu, n)[n].norm();
            let err = (value - 2.0).abs();
            sweep.tally.record(CARATHEODORY_TOL - err, 0.0, || Witness {
                input: json!({"suite": "caratheodory", "check": "equality", "n": n, "measure": mu}),
                values: json!({"value": value}),
            });
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(args.common.seed);
    let degree = 2 * args.max_n.max(args.max_k) + args.max_k;
    for _ in 0..args.trials {
        let atoms = rng.gen_range(1..=args.max_atoms);
        let mu = random_measure_with(atoms, &mut rng).expect("atom count >= 1");
        let p = coefficients(&mu, degree);
        if suite.includes(Suite::Caratheodory) {
            sweep.caratheodory(&mu, &p);
        }
        if suite.includes(Suite::Livingston) {
            sweep.livingston(&mu, &p);
        }
        if suite.includes(Suite::Determinant) {
            sweep.determinant(&mu, &p);
        }
        if suite.includes(Suite::Brown) {
            sweep.brown(&mu, &p);
        }
        if suite.includes(Suite::Schwarz) {
            sweep.schwarz(&mu);
        }
        if suite.includes(Suite::Oracle) {
            sweep.oracle(&mu, &p, &mut rng);
        }
    }
    sweep.tally.into_report(&mut report);
    Ok(report)
}
