//! Measures attaining equality in the coefficient bounds, and classifiers
//! that recognize the equality structures.
//!
//! Supports of extremal measures are rotated roots of unity `e^{i phi} U_n`
//! or intersections of two such cosets. On the boundary circle
//! `w = (1 + e^{i theta}) / 2` the Livingston functional has a second family:
//! two arc sets whose `k`-th powers are `zeta` and `-conj(zeta)`, carrying
//! masses `M` and `1 - M` with `M = (1 + tan(theta/2) tan(phi)) / 2`.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functionals::{a_det, bound_a, bound_livingston, livingston, regime, Regime};
use crate::herglotz::{
    coefficient, coefficients, coset_measure, reduce_angle, roots_of_unity_measure, uniform_masses,
    HerglotzMeasure, UnitAtom,
};
use crate::tolerance::angle_distance;

/// Angular distance under which a point counts as lying on a coset.
pub const SUPPORT_TOLERANCE: f64 = 1e-8;

/// Which equality statement a measure realizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Theorem {
    /// `|p_n| = 2`.
    #[serde(rename = "T_A")]
    TA,
    /// Livingston functional, `|1-2w| < 1`: `p_k = 0`, support in `e^{i phi} U_n`.
    #[serde(rename = "T1_lt")]
    T1Lt,
    /// Livingston functional, `|1-2w| > 1`: support in `e^{i theta} U_k ∩ e^{i phi} U_n`.
    #[serde(rename = "T1_gt")]
    T1Gt,
    /// Boundary circle, case (i).
    #[serde(rename = "T1_eq_i")]
    T1EqI,
    /// Boundary circle, case (ii): two arc sets.
    #[serde(rename = "T1_eq_ii")]
    T1EqIi,
    /// Determinant functional, `|1-2w| < 1`.
    #[serde(rename = "T2_lt")]
    T2Lt,
    /// Determinant functional, `|1-2w| >= 1`, single-point support.
    #[serde(rename = "T2_point")]
    T2Point,
}

impl std::fmt::Display for Theorem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let tag = match self {
            Theorem::TA => "T_A",
            Theorem::T1Lt => "T1_lt",
            Theorem::T1Gt => "T1_gt",
            Theorem::T1EqI => "T1_eq_i",
            Theorem::T1EqIi => "T1_eq_ii",
            Theorem::T2Lt => "T2_lt",
            Theorem::T2Point => "T2_point",
        };
        f.write_str(tag)
    }
}

/// Angles and masses describing an equality configuration. Fields that do
/// not apply to a case are left out.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CaseParameters {
    /// Rotation of the supporting coset.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phi: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub psi: Option<f64>,
    /// Argument of the functional value `2 e^{ic}`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    /// Arc parameter with `|arc_phi| <= pi/2`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub arc_phi: Option<f64>,
    /// Total mass of the first arc set.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mass: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EqualityCase {
    pub theorem: Theorem,
    pub parameters: CaseParameters,
}

/// Outcome of an equality classification.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Classification {
    Equality(EqualityCase),
    /// The bound is not attained; `gap = bound - value`.
    NoEquality { gap: f64 },
    /// The bound is attained but by none of the recognized structures.
    UnrecognizedEquality { value: f64, bound: f64 },
}

impl Classification {
    pub fn theorem(&self) -> Option<Theorem> {
        match self {
            Classification::Equality(case) => Some(case.theorem),
            _ => None,
        }
    }
}

fn check_k_n(k: usize, n: usize) -> Result<()> {
    if k == 0 || k >= n {
        return Err(Error::Precondition(format!("need 1 <= k <= n - 1, got k = {k}, n = {n}")));
    }
    Ok(())
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Any mass vector on `e^{i phi} U_n`; `|p_n| = 2`.
pub fn extremal_caratheodory(n: usize, phi: f64, masses: &[f64]) -> Result<HerglotzMeasure> {
    roots_of_unity_measure(n, phi, masses)
}

/// Uniform measure on `e^{i c/n} U_n`: `p_k = 0` and `p_n - w p_k p_{n-k} = 2 e^{ic}`
/// for every `w`, attaining the bound whenever `|1 - 2w| <= 1`.
pub fn extremal_t1_small_w(k: usize, n: usize, c: f64) -> Result<HerglotzMeasure> {
    check_k_n(k, n)?;
    roots_of_unity_measure(n, c / n as f64, &uniform_masses(n))
}

/// Any mass vector on the `gcd(k, n)`-point coset `e^{i alpha} U_d`, which is
/// the intersection of a `k`-coset and an `n`-coset. Attains `2|1 - 2w|`.
pub fn extremal_t1_large_w(k: usize, n: usize, alpha: f64, masses: &[f64]) -> Result<HerglotzMeasure> {
    check_k_n(k, n)?;
    let d = gcd(k, n);
    if masses.len() != d {
        return Err(Error::Simplex(format!("gcd({k}, {n}) = {d} masses required, got {}", masses.len())));
    }
    coset_measure(d, alpha, masses)
}

/// Uniform measure on `e^{i phi} U_{n+k}`: `p_1 = ... = p_{n+k-1} = 0`.
pub fn extremal_t2(k: usize, n: usize, phi: f64) -> Result<HerglotzMeasure> {
    if k == 0 || n == 0 {
        return Err(Error::Precondition(format!("need k >= 1 and n >= 1, got k = {k}, n = {n}")));
    }
    roots_of_unity_measure(n + k, phi, &uniform_masses(n + k))
}

/// `M = (1 + sin(theta) / (1 + cos(theta)) * tan(phi)) / 2`.
pub fn t3_first_arc_mass(theta: f64, phi: f64) -> f64 {
    0.5 * (1.0 + theta.sin() / (1.0 + theta.cos()) * phi.tan())
}

/// Inputs to [`extremal_t3`].
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct T3Params {
    pub k: usize,
    pub n: usize,
    /// `w = (1 + e^{i theta}) / 2`, `|theta| < pi`.
    pub theta: f64,
    /// Arc parameter, `|phi| <= pi/2`.
    pub phi: f64,
    /// Rotation of the `(n - 2k)`-coset; ignored when `n = 2k`.
    pub psi: f64,
    /// Target argument: the functional equals `2 e^{ic}`.
    pub c: f64,
    /// Per-point split inside the first set (uniform when absent).
    pub masses_a: Option<Vec<f64>>,
    /// Per-point split inside the second set (uniform when absent).
    pub masses_b: Option<Vec<f64>>,
    /// Share of the first set when `|phi| = pi/2` and the sets coincide.
    pub split: Option<f64>,
}

/// A two-arc equality measure with its bookkeeping.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct T3Construction {
    pub measure: HerglotzMeasure,
    /// `k` after replacing `k` by `n - k` when `2k > n`.
    pub k: usize,
    pub first_arc_mass: f64,
    pub second_arc_mass: f64,
    pub first_arc_points: Vec<f64>,
    pub second_arc_points: Vec<f64>,
    /// The two sets coincide (`|phi| = pi/2`).
    pub degenerate: bool,
}

const DEGENERATE_PHI_TOLERANCE: f64 = 1e-12;

/// Angles in `e^{i psi/(n-2k)} U_{n-2k} ∩ e^{i offset} U_k`; the full
/// `k`-coset when `n = 2k`.
fn arc_points(k: usize, n: usize, psi: f64, offset: f64) -> Vec<f64> {
    let kf = k as f64;
    if n == 2 * k {
        return (0..k).map(|j| reduce_angle(offset + TAU * j as f64 / kf)).collect();
    }
    let d = n - 2 * k;
    let target = kf * offset;
    (0..d)
        .map(|j| reduce_angle((psi + TAU * j as f64) / d as f64))
        .filter(|&x| angle_distance(kf * x, target) < SUPPORT_TOLERANCE)
        .collect()
}

fn spread(total: f64, split: Option<&Vec<f64>>, points: &[f64], label: &str) -> Result<Vec<UnitAtom>> {
    if points.is_empty() {
        if total > 0.0 {
            return Err(Error::EmptyIntersection(format!(
                "{label} arc set is empty but must carry mass {total}; psi is incompatible with phi and c"
            )));
        }
        return Ok(Vec::new());
    }
    let weights = match split {
        Some(w) => {
            if w.len() != points.len() {
                return Err(Error::Simplex(format!(
                    "{label} arc set has {} points, got {} masses",
                    points.len(),
                    w.len()
                )));
            }
            let sum: f64 = w.iter().sum();
            if w.iter().any(|m| !(*m >= 0.0)) || (sum - 1.0).abs() > 1e-9 {
                return Err(Error::Simplex(format!("{label} arc masses must form a simplex point")));
            }
            w.clone()
        }
        None => uniform_masses(points.len()),
    };
    Ok(points.iter().zip(weights).map(|(&a, m)| UnitAtom::new(a, total * m)).collect())
}

/// Two-arc measure on the boundary circle with
/// `p_n - w p_k p_{n-k} = 2 e^{ic}` for `w = (1 + e^{i theta}) / 2`.
pub fn extremal_t3(params: &T3Params) -> Result<T3Construction> {
    let T3Params { k, n, theta, phi, c, .. } = *params;
    check_k_n(k, n)?;
    if !(theta.abs() < PI) {
        return Err(Error::Precondition(format!("requires |theta| < pi, got theta = {theta}")));
    }
    if phi.abs() > FRAC_PI_2 + DEGENERATE_PHI_TOLERANCE {
        return Err(Error::Precondition(format!("requires |phi| <= pi/2, got phi = {phi}")));
    }
    // the functional is symmetric in k <-> n - k
    let k = if 2 * k > n { n - k } else { k };
    let psi = if n == 2 * k { 0.0 } else { params.psi };
    let degenerate = FRAC_PI_2 - phi.abs() <= DEGENERATE_PHI_TOLERANCE;

    let first = if degenerate {
        let s = params.split.unwrap_or(0.5);
        if !(0.0..=1.0).contains(&s) {
            return Err(Error::MassFormula { mass: s });
        }
        s
    } else {
        let m = t3_first_arc_mass(theta, phi);
        if !(-1e-12..=1.0 + 1e-12).contains(&m) {
            return Err(Error::MassFormula { mass: m });
        }
        m.clamp(0.0, 1.0)
    };
    let second = 1.0 - first;

    let kf = k as f64;
    let shift = (c - psi) / (2.0 * kf);
    let first_points = arc_points(k, n, psi, phi / kf + shift);
    let second_points = arc_points(k, n, psi, (PI - phi) / kf + shift);

    let mut atoms = spread(first, params.masses_a.as_ref(), &first_points, "first")?;
    atoms.extend(spread(second, params.masses_b.as_ref(), &second_points, "second")?);
    let measure = HerglotzMeasure::new(atoms)?;
    Ok(T3Construction {
        measure,
        k,
        first_arc_mass: first,
        second_arc_mass: second,
        first_arc_points: first_points,
        second_arc_points: second_points,
        degenerate,
    })
}

/// Values of `psi` for which both arc sets of [`extremal_t3`] are nonempty.
/// For `n = 2k` the coset rotation plays no role and this returns `[0]`.
pub fn t3_admissible_psi(k: usize, n: usize, phi: f64, c: f64) -> Vec<f64> {
    if k == 0 || k >= n {
        return Vec::new();
    }
    let k = if 2 * k > n { n - k } else { k };
    if n == 2 * k {
        return vec![0.0];
    }
    let (kf, nf, d) = (k as f64, n as f64, (n - 2 * k) as f64);
    let mut out: Vec<f64> = Vec::new();
    for j in 0..k {
        for l in 0..n {
            let psi = reduce_angle((d * (2.0 * phi + c + 2.0 * TAU * j as f64) + 2.0 * TAU * kf * l as f64) / nf);
            if out.iter().any(|&q| angle_distance(q, psi) < 1e-9) {
                continue;
            }
            let shift = (c - psi) / (2.0 * kf);
            let a = arc_points(k, n, psi, phi / kf + shift);
            let b = arc_points(k, n, psi, (PI - phi) / kf + shift);
            if !a.is_empty() && !b.is_empty() {
                out.push(psi);
            }
        }
    }
    out.sort_by(f64::total_cmp);
    out
}

/// Arc parameters `|phi| < pi/2` for which, when `n > 2k`, the two arc sets
/// can both meet a common `(n - 2k)`-coset: `2 phi - pi` must be a multiple
/// of `2 pi k / (n - 2k)` modulo `2 pi`.
pub fn t3_two_arc_phis(k: usize, n: usize) -> Vec<f64> {
    if k == 0 || k >= n {
        return Vec::new();
    }
    let k = if 2 * k > n { n - k } else { k };
    if n == 2 * k {
        return Vec::new();
    }
    let d = n - 2 * k;
    let mut out: Vec<f64> = Vec::new();
    for l in 0..d {
        // 2 phi - pi = 2 pi k l / d  (mod 2 pi), so phi is determined mod pi
        let raw = FRAC_PI_2 + PI * (k * l) as f64 / d as f64;
        let phi = (raw + FRAC_PI_2).rem_euclid(PI) - FRAC_PI_2;
        if FRAC_PI_2 - phi.abs() > 1e-9 && !out.iter().any(|&q| (q - phi).abs() < 1e-12) {
            out.push(phi);
        }
    }
    out.sort_by(f64::total_cmp);
    out
}

/// `lambda^e` for every atom if they agree within `tol`, else `None`.
fn common_power(mu: &HerglotzMeasure, e: usize, tol: f64) -> Option<Complex64> {
    let mut powers = mu.atoms().iter().map(|a| Complex64::from_polar(1.0, e as f64 * a.angle));
    let first = powers.next()?;
    powers.all(|p| (p - first).norm() <= tol).then_some(first)
}

fn arg_reduced(z: Complex64) -> f64 {
    reduce_angle(z.arg())
}

/// Classifies equality `|p_n - w p_k p_{n-k}| = 2 max{1, |1 - 2w|}`.
///
/// Cases are tried in order: `p_k = 0` with support on a rotated `U_n`, a
/// `gcd(k, n)`-coset, then the two-arc structure on the boundary circle.
pub fn classify_equality(mu: &HerglotzMeasure, k: usize, n: usize, w: Complex64, tol: f64) -> Result<Classification> {
    check_k_n(k, n)?;
    if !(tol > 0.0) {
        return Err(Error::Precondition("tolerance must be positive".into()));
    }
    let p = coefficients(mu, n);
    let value_c = livingston(&p, k, n, w)?;
    let value = value_c.norm();
    let bound = bound_livingston(w);
    if (value - bound).abs() > tol {
        return Ok(Classification::NoEquality { gap: bound - value });
    }
    let reg = regime(w, tol);
    let c = arg_reduced(value_c);

    // (i): p_k = 0 and support in a rotated U_n
    if reg != Regime::Outside && p[k].norm() <= tol {
        if let Some(pn) = common_power(mu, n, tol) {
            let theorem = if reg == Regime::Inside { Theorem::T1Lt } else { Theorem::T1EqI };
            let parameters = CaseParameters {
                phi: Some(arg_reduced(pn) / n as f64),
                c: Some(c),
                ..Default::default()
            };
            return Ok(Classification::Equality(EqualityCase { theorem, parameters }));
        }
    }

    // a coset of gcd(k, n) points
    if reg != Regime::Inside {
        if let (Some(_), Some(_)) = (common_power(mu, k, tol), common_power(mu, n, tol)) {
            let d = gcd(k, n);
            let alpha = arg_reduced(common_power(mu, d, tol.sqrt()).unwrap_or_default()) / d as f64;
            let theorem = if reg == Regime::Outside { Theorem::T1Gt } else { Theorem::T1EqIi };
            let parameters = CaseParameters {
                phi: Some(alpha),
                c: Some(c),
                ..Default::default()
            };
            return Ok(Classification::Equality(EqualityCase { theorem, parameters }));
        }
    }

    if reg == Regime::Boundary {
        if let Some(case) = classify_two_arc(mu, k, n, w, c, tol) {
            return Ok(Classification::Equality(case));
        }
    }
    Ok(Classification::UnrecognizedEquality { value, bound })
}

fn classify_two_arc(mu: &HerglotzMeasure, k: usize, n: usize, w: Complex64, c: f64, tol: f64) -> Option<EqualityCase> {
    let k = if 2 * k > n { n - k } else { k };
    let theta = (2.0 * w - Complex64::new(1.0, 0.0)).arg();
    if !(theta.abs() < PI) {
        return None;
    }
    let psi = if n == 2 * k {
        0.0
    } else {
        arg_reduced(common_power(mu, n - 2 * k, tol)?)
    };
    let rot = Complex64::from_polar(1.0, -(c - psi) / 2.0);
    let u: Vec<Complex64> = mu
        .atoms()
        .iter()
        .map(|a| Complex64::from_polar(1.0, k as f64 * a.angle) * rot)
        .collect();
    let sin_phi = u[0].im;
    if u.iter().any(|z| (z.im - sin_phi).abs() > tol) {
        return None;
    }
    let phi = sin_phi.clamp(-1.0, 1.0).asin();
    let cos_phi = phi.cos();
    if u.iter().any(|z| (z.re.abs() - cos_phi).abs() > tol.sqrt()) {
        return None;
    }
    let first: f64 = mu
        .atoms()
        .iter()
        .zip(&u)
        .filter(|(_, z)| z.re >= 0.0)
        .map(|(a, _)| a.mass)
        .sum();
    let degenerate = cos_phi <= tol;
    if !degenerate && (first - t3_first_arc_mass(theta, phi)).abs() > tol {
        return None;
    }
    Some(EqualityCase {
        theorem: Theorem::T1EqIi,
        parameters: CaseParameters {
            theta: Some(theta),
            psi: Some(psi),
            c: Some(c),
            arc_phi: Some(phi),
            mass: Some(first),
            ..Default::default()
        },
    })
}

/// Classifies equality `|A_{k,n}(w)| = 2 max{1, |1 - 2w|^k}`.
pub fn classify_determinant_equality(
    mu: &HerglotzMeasure,
    k: usize,
    n: usize,
    w: Complex64,
    tol: f64,
) -> Result<Classification> {
    if n == 0 {
        return Err(Error::Precondition("A_{k,n} needs n >= 1".into()));
    }
    if !(tol > 0.0) {
        return Err(Error::Precondition("tolerance must be positive".into()));
    }
    if k == 0 {
        return classify_caratheodory_equality(mu, n, tol);
    }
    let p = coefficients(mu, n + k);
    let value = a_det(&p, k, n, w)?.norm();
    let bound = bound_a(k, w);
    if (value - bound).abs() > tol {
        return Ok(Classification::NoEquality { gap: bound - value });
    }
    let reg = regime(w, tol);
    if reg != Regime::Inside && mu.len() == 1 {
        return Ok(Classification::Equality(EqualityCase {
            theorem: Theorem::T2Point,
            parameters: CaseParameters {
                phi: Some(mu.atoms()[0].angle),
                ..Default::default()
            },
        }));
    }
    if reg != Regime::Outside && (1..=k).all(|j| p[j].norm() <= tol) {
        if let Some(top) = common_power(mu, n + k, tol) {
            return Ok(Classification::Equality(EqualityCase {
                theorem: Theorem::T2Lt,
                parameters: CaseParameters {
                    phi: Some(arg_reduced(top) / (n + k) as f64),
                    ..Default::default()
                },
            }));
        }
    }
    Ok(Classification::UnrecognizedEquality { value, bound })
}

/// Classifies equality `|p_n| = 2`.
pub fn classify_caratheodory_equality(mu: &HerglotzMeasure, n: usize, tol: f64) -> Result<Classification> {
    if n == 0 {
        return Err(Error::Precondition("need n >= 1".into()));
    }
    let value = coefficient(mu, n).norm();
    if (value - 2.0).abs() > tol {
        return Ok(Classification::NoEquality { gap: 2.0 - value });
    }
    match common_power(mu, n, tol) {
        Some(top) => Ok(Classification::Equality(EqualityCase {
            theorem: Theorem::TA,
            parameters: CaseParameters {
                phi: Some(arg_reduced(top) / n as f64),
                ..Default::default()
            },
        })),
        None => Ok(Classification::UnrecognizedEquality { value, bound: 2.0 }),
    }
}
