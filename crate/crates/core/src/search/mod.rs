//! Sharpness certificates: maximize a functional's modulus over `N`-atom
//! probability measures and report the gap to its bound.
//!
//! A measure with `N` atoms is parameterized by `2N - 1` reals: `N` angles
//! (unconstrained, read mod `2 pi`) and `N - 1` logits, the last atom's
//! logit being pinned at zero. Masses are the softmax of the logits, which
//! maps onto the open simplex.

pub mod nelder_mead;

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extremal::{extremal_t1_small_w, extremal_t2};
use crate::functionals::{a_det, bound_a, bound_livingston, brown, livingston, regime, FunctionalParams, Regime};
use crate::herglotz::{coefficients, CoeffSeries, HerglotzMeasure};
use nelder_mead::{minimize, NelderMeadOptions};

/// The quantity being maximized.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "functional", rename_all = "snake_case")]
pub enum Objective {
    /// `|p_n - w p_k p_{n-k}|` against `2 max{1, |1-2w|}`.
    Livingston { k: usize, n: usize, w: Complex64 },
    /// `|A_{k,n}(w)|` against `2 max{1, |1-2w|^k}`.
    #[serde(rename = "A")]
    Determinant { k: usize, n: usize, w: Complex64 },
    /// Brown's inequality as `lhs^2 - rhs^2`, whose supremum is zero. Squaring
    /// avoids the square root, whose rounding near a zero radicand is large
    /// enough for the optimizer to exploit.
    Brown { n: usize, m: usize, nu: f64 },
}

impl Objective {
    pub fn livingston(params: FunctionalParams) -> Self {
        Objective::Livingston {
            k: params.k,
            n: params.n,
            w: params.w,
        }
    }

    pub fn determinant(params: FunctionalParams) -> Self {
        Objective::Determinant {
            k: params.k,
            n: params.n,
            w: params.w,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Objective::Livingston { k, n, .. } if k == 0 || k >= n => {
                Err(Error::Precondition(format!("need 1 <= k <= n - 1, got k = {k}, n = {n}")))
            }
            Objective::Determinant { n: 0, .. } => Err(Error::Precondition("A_{k,n} needs n >= 1".into())),
            Objective::Brown { n, m, .. } if n == 0 || m == 0 => {
                Err(Error::Precondition("n and m must be positive".into()))
            }
            _ => Ok(()),
        }
    }

    /// Largest coefficient index the objective reads.
    pub fn degree(&self) -> usize {
        match *self {
            Objective::Livingston { n, .. } => n,
            Objective::Determinant { k, n, .. } => n + k,
            Objective::Brown { n, m, .. } => n + m,
        }
    }

    /// Default atom count: enough to hold every extremal support.
    pub fn default_atom_count(&self) -> usize {
        match *self {
            Objective::Livingston { k, n, .. } | Objective::Determinant { k, n, .. } => (n + k).max(1),
            Objective::Brown { .. } => 2,
        }
    }

    pub fn bound(&self) -> f64 {
        match *self {
            Objective::Livingston { w, .. } => bound_livingston(w),
            Objective::Determinant { k, w, .. } => bound_a(k, w),
            Objective::Brown { .. } => 0.0,
        }
    }

    /// Objective value on a coefficient series of sufficient length.
    pub fn value_on(&self, p: &CoeffSeries) -> Result<f64> {
        match *self {
            Objective::Livingston { k, n, w } => Ok(livingston(p, k, n, w)?.norm()),
            Objective::Determinant { k, n, w } => Ok(a_det(p, k, n, w)?.norm()),
            Objective::Brown { n, m, nu } => {
                let b = brown(p, n, m, nu)?;
                Ok(b.lhs * b.lhs - b.rhs * b.rhs)
            }
        }
    }

    pub fn value(&self, mu: &HerglotzMeasure) -> Result<f64> {
        self.value_on(&coefficients(mu, self.degree()))
    }

    /// A measure known to attain the bound, when one is available.
    pub fn warm_start(&self) -> Option<HerglotzMeasure> {
        match *self {
            Objective::Livingston { k, n, w } => match regime(w, 0.0) {
                Regime::Inside => extremal_t1_small_w(k, n, 0.0).ok(),
                _ => Some(HerglotzMeasure::point_mass(0.0)),
            },
            Objective::Determinant { k, n, w } => match regime(w, 0.0) {
                Regime::Inside if k > 0 => extremal_t2(k, n, 0.0).ok(),
                _ => Some(HerglotzMeasure::point_mass(0.0)),
            },
            Objective::Brown { .. } => Some(HerglotzMeasure::point_mass(0.0)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub atom_count: usize,
    pub restarts: usize,
    /// Simplex iterations allowed per restart.
    pub max_iterations: usize,
    pub step_tolerance: f64,
    pub seed: u64,
    /// Seed restart 0 from a known extremal measure.
    pub warm_start: bool,
}

impl SearchConfig {
    pub fn for_objective(objective: &Objective, seed: u64) -> Self {
        SearchConfig {
            atom_count: objective.default_atom_count(),
            restarts: 30,
            max_iterations: 4000,
            step_tolerance: 1e-10,
            seed,
            warm_start: true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.atom_count == 0 {
            return Err(Error::Precondition("atom_count must be at least 1".into()));
        }
        if self.restarts == 0 {
            return Err(Error::Precondition("restarts must be at least 1".into()));
        }
        if !(self.step_tolerance > 0.0) {
            return Err(Error::Precondition("step_tolerance must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub best_measure: HerglotzMeasure,
    pub best_value: f64,
    pub bound: f64,
    /// `bound - best_value`; never clamped.
    pub gap: f64,
    pub iterations_used: usize,
    pub restart_index: usize,
    /// Whether restart 0 was seeded from an extremal constructor.
    pub warm_started: bool,
}

/// Reads angles and softmax masses out of a parameter vector.
fn unpack(x: &[f64], atoms: usize, angles: &mut [f64], masses: &mut [f64]) {
    angles.copy_from_slice(&x[..atoms]);
    let logits = &x[atoms..];
    let peak = logits.iter().copied().fold(0.0, f64::max);
    let mut total = 0.0;
    for (i, m) in masses.iter_mut().enumerate() {
        let l = if i + 1 < atoms { logits[i] } else { 0.0 };
        *m = (l - peak).exp();
        total += *m;
    }
    masses.iter_mut().for_each(|m| *m /= total);
}

/// Inverse of [`unpack`]; pads with negligible atoms when the measure is small.
fn pack(mu: &HerglotzMeasure, atoms: usize) -> Option<Vec<f64>> {
    let real = mu.atoms();
    if real.len() > atoms {
        return None;
    }
    const PAD_LOGIT: f64 = -60.0;
    let pad = atoms - real.len();
    let last = real[real.len() - 1].mass.ln();
    let mut x = vec![0.0; 2 * atoms - 1];
    for (i, a) in real.iter().enumerate() {
        x[pad + i] = a.angle;
    }
    for i in 0..atoms - 1 {
        x[atoms + i] = if i < pad { PAD_LOGIT } else { real[i - pad].mass.ln() - last };
    }
    Some(x)
}

/// `|A_{k,n}(w)|` by expanding the determinant along its first row. The
/// rows below it form a unit lower-triangular band, so the cofactors are the
/// coefficients `q_0..q_k` of `1 / (1 + w(p_1 z + ... + p_k z^k))`. This is
/// the reciprocal-series identity, which holds for every `n >= 1`; the search
/// uses it because it needs no allocation.
fn determinant_modulus(p: &[Complex64], k: usize, n: usize, w: Complex64, q: &mut Vec<Complex64>) -> f64 {
    q.clear();
    q.push(Complex64::new(1.0, 0.0));
    for m in 1..=k {
        let s: Complex64 = (1..=m).map(|i| p[i] * q[m - i]).sum();
        q.push(-w * s);
    }
    q.iter().enumerate().map(|(j, qj)| qj * p[n + k - j]).sum::<Complex64>().norm()
}

struct Evaluator<'a> {
    objective: &'a Objective,
    atoms: usize,
    angles: Vec<f64>,
    masses: Vec<f64>,
    coeffs: Vec<Complex64>,
    scratch: Vec<Complex64>,
}

impl Evaluator<'_> {
    /// Negated objective for minimization.
    fn cost(&mut self, x: &[f64]) -> f64 {
        unpack(x, self.atoms, &mut self.angles, &mut self.masses);
        let degree = self.objective.degree();
        self.coeffs.clear();
        self.coeffs.resize(degree + 1, Complex64::default());
        for (&theta, &m) in self.angles.iter().zip(&self.masses) {
            let lambda = Complex64::from_polar(1.0, theta);
            let mut power = Complex64::new(2.0 * m, 0.0);
            for c in self.coeffs.iter_mut().skip(1) {
                power *= lambda;
                *c += power;
            }
        }
        self.coeffs[0] = Complex64::new(1.0, 0.0);
        if let Objective::Determinant { k, n, w } = *self.objective {
            return -determinant_modulus(&self.coeffs, k, n, w, &mut self.scratch);
        }
        let p = CoeffSeries::new(std::mem::take(&mut self.coeffs)).expect("nonempty");
        let v = self.objective.value_on(&p).unwrap_or(f64::NEG_INFINITY);
        self.coeffs = p.into_inner();
        -v
    }
}

/// Local ascent from `x0`, re-seeding the simplex at each convergence until
/// it stops improving or the iteration budget runs out.
fn local_search(eval: &mut Evaluator<'_>, x0: Vec<f64>, cfg: &SearchConfig) -> (Vec<f64>, f64, usize) {
    let mut x = x0;
    let mut best = eval.cost(&x);
    let mut used = 0;
    let mut step = 0.5;
    while used < cfg.max_iterations {
        let opts = NelderMeadOptions {
            max_iterations: cfg.max_iterations - used,
            step_tolerance: cfg.step_tolerance,
            initial_step: step,
        };
        let m = minimize(|v| eval.cost(v), &x, &opts);
        used += m.iterations.max(1);
        let improved = best - m.value;
        if m.value <= best {
            x = m.x;
            best = m.value;
        }
        if !m.converged || improved <= 1e-15 * best.abs().max(1.0) {
            break;
        }
        step = (step * 0.5).max(1e-3);
    }
    (x, -best, used)
}

/// Multi-start maximization of `|functional|` over `atom_count`-atom measures.
pub fn maximize(objective: &Objective, cfg: &SearchConfig) -> Result<SearchResult> {
    objective.validate()?;
    cfg.validate()?;
    let atoms = cfg.atom_count;
    let dim = 2 * atoms - 1;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut eval = Evaluator {
        objective,
        atoms,
        angles: vec![0.0; atoms],
        masses: vec![0.0; atoms],
        coeffs: Vec::new(),
        scratch: Vec::new(),
    };

    let warm = if cfg.warm_start {
        objective.warm_start().and_then(|mu| pack(&mu, atoms))
    } else {
        None
    };
    let warm_started = warm.is_some();

    let mut best: Option<(Vec<f64>, f64, usize, usize)> = None;
    let mut total_iterations = 0;
    for restart in 0..cfg.restarts {
        // draw the random start even when warm-starting so later restarts do not
        // depend on whether a warm start was available
        let mut x0: Vec<f64> = (0..atoms).map(|_| rng.gen_range(0.0..TAU)).collect();
        x0.extend((0..dim - atoms).map(|_| rng.sample::<f64, _>(StandardNormal)));
        if restart == 0 {
            if let Some(w) = &warm {
                x0.clone_from(w);
            }
        }
        let (x, value, used) = local_search(&mut eval, x0, cfg);
        total_iterations += used;
        let better = match &best {
            None => true,
            Some((_, v, _, _)) => value > *v,
        };
        if better {
            best = Some((x, value, restart, used));
        }
    }

    let (x, _, restart_index, _) = best.expect("restarts >= 1");
    let mut angles = vec![0.0; atoms];
    let mut masses = vec![0.0; atoms];
    unpack(&x, atoms, &mut angles, &mut masses);
    let best_measure = HerglotzMeasure::from_parts(&angles, &masses)?;
    let best_value = objective.value(&best_measure)?;
    let bound = objective.bound();
    Ok(SearchResult {
        best_measure,
        best_value,
        bound,
        gap: bound - best_value,
        iterations_used: total_iterations,
        restart_index,
        warm_started,
    })
}

/// [`maximize`] over each objective, with seed `cfg.seed + index`.
pub fn sweep(objectives: &[Objective], cfg: &SearchConfig) -> Result<Vec<SearchResult>> {
    if objectives.is_empty() {
        return Err(Error::Precondition("sweep grid is empty".into()));
    }
    objectives
        .iter()
        .enumerate()
        .map(|(i, obj)| {
            let point_cfg = SearchConfig {
                seed: cfg.seed.wrapping_add(i as u64),
                ..*cfg
            };
            maximize(obj, &point_cfg)
        })
        .collect()
}

/// `count` values of `w = (1 - r e^{i t}) / 2` with `|1 - 2w| = r`, where
/// `r` is 0.6 inside the circle, 1 on it and 1.8 outside.
pub fn regime_samples(regime: Regime, count: usize) -> Vec<Complex64> {
    let r = match regime {
        Regime::Inside => 0.6,
        Regime::Boundary => 1.0,
        Regime::Outside => 1.8,
    };
    (0..count)
        .map(|j| {
            let t = TAU * (j as f64 + 0.25) / count as f64;
            (Complex64::new(1.0, 0.0) - Complex64::from_polar(r, t)) / 2.0
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functionals::regime_modulus;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn cfg(atoms: usize, restarts: usize, seed: u64) -> SearchConfig {
        SearchConfig {
            atom_count: atoms,
            restarts,
            max_iterations: 4000,
            step_tolerance: 1e-10,
            seed,
            warm_start: false,
        }
    }

    #[test]
    fn first_row_expansion_matches_determinant() {
        let mut q = Vec::new();
        for seed in 0..40 {
            let mu = crate::herglotz::random_measure(1 + seed as usize % 7, seed).unwrap();
            let w = c(-1.0 + 0.1 * seed as f64, 0.7 - 0.05 * seed as f64);
            for k in 0..=5 {
                for n in 1..=6 {
                    let p = coefficients(&mu, n + k);
                    let direct = a_det(&p, k, n, w).unwrap().norm();
                    let fast = determinant_modulus(p.coeffs(), k, n, w, &mut q);
                    assert!((direct - fast).abs() <= 1e-12 * direct.max(1.0), "k={k} n={n}: {direct} {fast}");
                }
            }
        }
    }

    #[test]
    fn pack_unpack_round_trip() {
        let mu = HerglotzMeasure::from_parts(&[0.3, 1.7, 4.0], &[0.2, 0.5, 0.3]).unwrap();
        let x = pack(&mu, 5).unwrap();
        let mut angles = vec![0.0; 5];
        let mut masses = vec![0.0; 5];
        unpack(&x, 5, &mut angles, &mut masses);
        let back = HerglotzMeasure::from_parts(&angles, &masses).unwrap();
        let real: Vec<_> = back.atoms().iter().filter(|a| a.mass > 1e-20).collect();
        assert_eq!(real.len(), 3);
        for (a, b) in real.iter().zip(mu.atoms()) {
            assert!((a.angle - b.angle).abs() < 1e-14 && (a.mass - b.mass).abs() < 1e-14);
        }
        assert!(pack(&mu, 2).is_none());
    }

    #[test]
    fn livingston_w_one_reaches_two() {
        let obj = Objective::Livingston { k: 1, n: 2, w: c(1.0, 0.0) };
        let r = maximize(&obj, &cfg(2, 20, 1)).unwrap();
        assert!((r.best_value - 2.0).abs() < 1e-5, "{r:?}");
        assert!(r.gap >= -1e-9);
    }

    #[test]
    fn determinant_point_mass_value() {
        let obj = Objective::Determinant { k: 1, n: 1, w: c(2.0, 0.0) };
        let r = maximize(&obj, &cfg(1, 5, 2)).unwrap();
        assert!((r.best_value - 6.0).abs() < 1e-6, "{r:?}");
    }

    #[test]
    fn livingston_half_w() {
        let obj = Objective::Livingston { k: 1, n: 3, w: c(0.5, 0.0) };
        let r = maximize(&obj, &cfg(3, 20, 3)).unwrap();
        assert!((r.best_value - 2.0).abs() < 1e-5, "{r:?}");
    }

    #[test]
    #[allow(clippy::approx_constant)] // a rotation near pi, not pi itself
    fn brown_is_sharp() {
        let obj = Objective::Brown { n: 1, m: 1, nu: 3.14159 };
        let r = maximize(&obj, &cfg(2, 10, 4)).unwrap();
        assert!(r.gap.abs() <= 1e-4, "{r:?}");
    }

    #[test]
    fn deterministic() {
        let obj = Objective::Determinant { k: 2, n: 2, w: c(0.4, 0.3) };
        let a = maximize(&obj, &cfg(4, 4, 9)).unwrap();
        let b = maximize(&obj, &cfg(4, 4, 9)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn warm_start_certifies_immediately() {
        for (obj, _) in [
            (Objective::Livingston { k: 2, n: 5, w: c(0.5, 0.2) }, ()),
            (Objective::Livingston { k: 1, n: 3, w: c(2.0, 1.0) }, ()),
            (Objective::Determinant { k: 2, n: 3, w: c(0.6, -0.1) }, ()),
            (Objective::Determinant { k: 3, n: 1, w: c(-1.0, 0.5) }, ()),
        ] {
            let config = SearchConfig {
                restarts: 1,
                warm_start: true,
                ..cfg(obj.default_atom_count(), 1, 0)
            };
            let r = maximize(&obj, &config).unwrap();
            assert!(r.warm_started);
            assert!(r.gap.abs() <= 1e-10, "{obj:?}: {r:?}");
        }
    }

    #[test]
    fn re_evaluation_matches() {
        let obj = Objective::Livingston { k: 1, n: 4, w: c(1.5, -0.5) };
        let r = maximize(&obj, &cfg(5, 3, 5)).unwrap();
        assert!((obj.value(&r.best_measure).unwrap() - r.best_value).abs() <= 1e-12);
    }

    #[test]
    fn sweep_seeds_by_index() {
        let grid = [
            Objective::Livingston { k: 1, n: 2, w: c(1.0, 0.0) },
            Objective::Livingston { k: 1, n: 2, w: c(0.0, 1.0) },
        ];
        let config = cfg(3, 3, 40);
        let swept = sweep(&grid, &config).unwrap();
        assert_eq!(swept.len(), 2);
        assert_eq!(swept[0], maximize(&grid[0], &config).unwrap());
        let second = SearchConfig { seed: 41, ..config };
        assert_eq!(swept[1], maximize(&grid[1], &second).unwrap());
        assert!(sweep(&[], &config).is_err());
    }

    #[test]
    fn invalid_inputs() {
        let obj = Objective::Livingston { k: 2, n: 2, w: c(1.0, 0.0) };
        assert!(maximize(&obj, &cfg(2, 1, 0)).is_err());
        let ok = Objective::Livingston { k: 1, n: 2, w: c(1.0, 0.0) };
        assert!(maximize(&ok, &cfg(0, 1, 0)).is_err());
        assert!(maximize(&ok, &cfg(2, 0, 0)).is_err());
    }

    #[test]
    fn regime_sample_radii() {
        for (reg, r) in [(Regime::Inside, 0.6), (Regime::Boundary, 1.0), (Regime::Outside, 1.8)] {
            for w in regime_samples(reg, 24) {
                assert!((regime_modulus(w) - r).abs() < 1e-14);
            }
        }
    }
}
