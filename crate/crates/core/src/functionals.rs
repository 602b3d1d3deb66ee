//! Coefficient functionals and their sharp bounds.
//!
//! `A_{k,n}(w)` is the `(k+1) x (k+1)` determinant
//!
//! ```text
//! | p_{n+k}  p_{n+k-1} ... p_{n+1}  p_n |
//! | w p_1    1         ... 0        0   |
//! | w p_2    w p_1     ... 0        0   |
//! |  ...                                |
//! | w p_k    w p_{k-1} ... w p_1    1   |
//! ```
//!
//! [`a_det`] assembles and factors it directly and is the reference. Two
//! independent routes validate it: [`a_herglotz`] integrates `2 lambda Q_{k,n}(lambda)`
//! against the measure, and [`a_delsarte`] reads it off the partial sums of
//! the reciprocal of the perturbed series (only for `n >= k + 1`).

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::herglotz::{coefficient, coefficients, CoeffSeries, HerglotzMeasure};
use crate::linalg::ComplexMatrix;
use crate::series::{perturb, reciprocal};

pub use crate::linalg::determinant;

/// The index triple `(k, n, w)` of a functional instance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FunctionalParams {
    pub k: usize,
    pub n: usize,
    pub w: Complex64,
}

impl FunctionalParams {
    pub fn new(k: usize, n: usize, w: Complex64) -> Self {
        FunctionalParams { k, n, w }
    }

    /// `|1 - 2w|`; the bounds change form at one.
    pub fn regime_modulus(&self) -> f64 {
        regime_modulus(self.w)
    }
}

/// Which side of the circle `|1 - 2w| = 1` a parameter lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Inside,
    Boundary,
    Outside,
}

pub fn regime_modulus(w: Complex64) -> f64 {
    (Complex64::new(1.0, 0.0) - 2.0 * w).norm()
}

/// Classifies `w`, treating `| |1-2w| - 1 | <= tol` as the boundary.
pub fn regime(w: Complex64, tol: f64) -> Regime {
    let r = regime_modulus(w);
    if (r - 1.0).abs() <= tol {
        Regime::Boundary
    } else if r < 1.0 {
        Regime::Inside
    } else {
        Regime::Outside
    }
}

/// One side of an inequality `lhs <= rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Inequality {
    pub lhs: f64,
    pub rhs: f64,
}

impl Inequality {
    pub fn slack(&self) -> f64 {
        self.rhs - self.lhs
    }

    pub fn holds(&self, tol: f64) -> bool {
        self.lhs <= self.rhs + tol
    }
}

/// `p_n - w p_k p_{n-k}` for `1 <= k <= n - 1`.
pub fn livingston(p: &CoeffSeries, k: usize, n: usize, w: Complex64) -> Result<Complex64> {
    if k == 0 || k >= n {
        return Err(Error::Precondition(format!("need 1 <= k <= n - 1, got k = {k}, n = {n}")));
    }
    p.require(n)?;
    Ok(p[n] - w * p[k] * p[n - k])
}

/// `2 max{1, |1 - 2w|}`.
pub fn bound_livingston(w: Complex64) -> f64 {
    2.0 * regime_modulus(w).max(1.0)
}

/// `2 max{1, |1 - 2w|^k}`.
pub fn bound_a(k: usize, w: Complex64) -> f64 {
    2.0 * regime_modulus(w).powi(k as i32).max(1.0)
}

/// The matrix whose determinant is `A_{k,n}(w)`.
pub fn a_matrix(p: &CoeffSeries, k: usize, n: usize, w: Complex64) -> Result<ComplexMatrix> {
    if n == 0 {
        return Err(Error::Precondition("A_{k,n} needs n >= 1".into()));
    }
    p.require(n + k)?;
    let dim = k + 1;
    let mut m = ComplexMatrix::zeros(dim);
    for j in 0..dim {
        m[(0, j)] = p[n + k - j];
    }
    for i in 1..dim {
        for j in 0..i {
            m[(i, j)] = w * p[i - j];
        }
        m[(i, i)] = Complex64::new(1.0, 0.0);
    }
    Ok(m)
}

/// `A_{k,n}(w)` by direct determinant evaluation.
pub fn a_det(p: &CoeffSeries, k: usize, n: usize, w: Complex64) -> Result<Complex64> {
    Ok(determinant(&a_matrix(p, k, n, w)?))
}

/// `Q_{k,n}(lambda)` from the recursion `Q_j = lambda Q_{j-1} - w A_{j-1,n}`,
/// starting at `Q_0 = lambda^{n-1}`.
pub fn q_eval(p: &CoeffSeries, k: usize, n: usize, w: Complex64, lambda: Complex64) -> Result<Complex64> {
    if k == 0 {
        return Err(Error::Precondition("Q_{k,n} is defined for k >= 1".into()));
    }
    if (lambda.norm() - 1.0).abs() > 1e-9 {
        return Err(Error::Domain(format!("|lambda| = {} is not on the unit circle", lambda.norm())));
    }
    let lower = lower_a_values(p, k, n, w)?;
    Ok(q_from_lower(&lower, n, w, lambda))
}

/// `[A_{0,n}, ..., A_{k-1,n}]`.
fn lower_a_values(p: &CoeffSeries, k: usize, n: usize, w: Complex64) -> Result<Vec<Complex64>> {
    if n == 0 {
        return Err(Error::Precondition("A_{k,n} needs n >= 1".into()));
    }
    p.require(n + k - 1)?;
    (0..k).map(|j| a_det(p, j, n, w)).collect()
}

fn q_from_lower(lower: &[Complex64], n: usize, w: Complex64, lambda: Complex64) -> Complex64 {
    let mut q = lambda.powi(n as i32 - 1);
    for a in lower {
        q = lambda * q - w * a;
    }
    q
}

/// `A_{k,n}(w) = 2 sum_j m_j lambda_j Q_{k,n}(lambda_j)`.
pub fn a_herglotz(mu: &HerglotzMeasure, k: usize, n: usize, w: Complex64) -> Result<Complex64> {
    if n == 0 {
        return Err(Error::Precondition("A_{k,n} needs n >= 1".into()));
    }
    if k == 0 {
        return Ok(coefficient(mu, n));
    }
    let p = coefficients(mu, n + k - 1);
    let lower = lower_a_values(&p, k, n, w)?;
    let sum: Complex64 = mu
        .atoms()
        .iter()
        .map(|atom| {
            let lambda = atom.point();
            atom.mass * lambda * q_from_lower(&lower, n, w, lambda)
        })
        .sum();
    Ok(2.0 * sum)
}

/// `A_{k,n}(w) = sum_{j=0..k} q_j p_{n+k-j}` where `q` is the degree-`k`
/// truncation of the reciprocal of the perturbed series. Requires `n >= k + 1`.
pub fn a_delsarte(p: &CoeffSeries, k: usize, n: usize, w: Complex64) -> Result<Complex64> {
    if n < k + 1 {
        return Err(Error::Precondition(format!(
            "the reciprocal route needs n >= k + 1, got k = {k}, n = {n}"
        )));
    }
    p.require(n + k)?;
    let q = reciprocal(&perturb(p, w, k)?, k)?;
    Ok((0..=k).map(|j| q[j] * p[n + k - j]).sum())
}

/// `|p_{n+m} - w p_n| <= 2 (1 + |w|^2 - Re(conj(w) p_m))^{1/2}`.
pub fn generalized_shift(p: &CoeffSeries, n: usize, m: usize, w: Complex64) -> Result<Inequality> {
    if n == 0 || m == 0 {
        return Err(Error::Precondition("n and m must be positive".into()));
    }
    p.require(n + m)?;
    let lhs = (p[n + m] - w * p[n]).norm();
    let radicand = 1.0 + w.norm_sqr() - (w.conj() * p[m]).re;
    Ok(Inequality {
        lhs,
        rhs: 2.0 * checked_sqrt(radicand)?,
    })
}

/// Brown's inequality `|e^{i nu} p_{n+m} - p_n| <= 2 sqrt(2 - Re(e^{i nu} p_m))`.
pub fn brown(p: &CoeffSeries, n: usize, m: usize, nu: f64) -> Result<Inequality> {
    if n == 0 || m == 0 {
        return Err(Error::Precondition("n and m must be positive".into()));
    }
    p.require(n + m)?;
    let rot = Complex64::from_polar(1.0, nu);
    let lhs = (rot * p[n + m] - p[n]).norm();
    let radicand = 2.0 - (rot * p[m]).re;
    Ok(Inequality {
        lhs,
        rhs: 2.0 * checked_sqrt(radicand)?,
    })
}

/// Rounding may push an exactly-zero radicand slightly negative.
const RADICAND_FLOOR: f64 = -1e-12;

fn checked_sqrt(radicand: f64) -> Result<f64> {
    if radicand < RADICAND_FLOOR {
        return Err(Error::NotInClass { radicand });
    }
    Ok(radicand.max(0.0).sqrt())
}

/// Sample points for sweeps over `w`: the Cartesian grid
/// `Re w in [-1, 2]`, `Im w in [-1.5, 1.5]` at step 0.25 (169 points),
/// followed by 24 points on the circle `|1 - 2w| = 1`.
pub fn w_grid() -> Vec<Complex64> {
    let mut out = Vec::with_capacity(169 + 24);
    for i in 0..13 {
        for j in 0..13 {
            out.push(Complex64::new(-1.0 + 0.25 * i as f64, -1.5 + 0.25 * j as f64));
        }
    }
    out.extend(boundary_circle(24));
    out
}

/// `count` points `w = (1 + e^{i theta}) / 2` equally spaced in `theta`.
pub fn boundary_circle(count: usize) -> Vec<Complex64> {
    (0..count)
        .map(|j| {
            let theta = TAU * j as f64 / count as f64;
            (Complex64::new(1.0, 0.0) + Complex64::from_polar(1.0, theta)) / 2.0
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::herglotz::{random_measure, roots_of_unity_measure, uniform_masses};
    use crate::series::wronski_coefficient;
    use crate::tolerance::agree;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rand_c(rng: &mut ChaCha8Rng, r: f64) -> Complex64 {
        c(rng.gen_range(-r..r), rng.gen_range(-r..r))
    }

    /// Direct determinant of the Q-matrix: first row
    /// `(lambda^{n+k-1}, p_{n+k-1}, ..., p_n)`, first column `w lambda^{i-1}` below it.
    fn q_matrix_det(p: &CoeffSeries, k: usize, n: usize, w: Complex64, lambda: Complex64) -> Complex64 {
        let dim = k + 1;
        let mut m = ComplexMatrix::zeros(dim);
        m[(0, 0)] = lambda.powi((n + k - 1) as i32);
        for j in 1..dim {
            m[(0, j)] = p[n + k - j];
        }
        for i in 1..dim {
            m[(i, 0)] = w * lambda.powi(i as i32 - 1);
            for j in 1..i {
                m[(i, j)] = w * p[i - j];
            }
            m[(i, i)] = c(1.0, 0.0);
        }
        determinant(&m)
    }

    #[test]
    fn livingston_examples() {
        let hp = CoeffSeries::half_plane(8);
        let w = c(0.3, -0.7);
        for n in 2..8 {
            for k in 1..n {
                let v = livingston(&hp, k, n, w).unwrap();
                assert!((v - 2.0 * (c(1.0, 0.0) - 2.0 * w)).norm() < 1e-14);
            }
        }

        let mu = HerglotzMeasure::from_parts(&[0.4, 2.2], &[0.5, 0.5]).unwrap();
        let p = coefficients(&mu, 6);
        assert!((livingston(&p, 3, 6, c(1.0, 0.0)).unwrap().norm() - 2.0).abs() < 1e-12);

        let mut v = vec![c(1.0, 0.0); 5];
        v[1] = c(0.0, 0.0);
        v[4] = c(0.3, 0.9);
        let p = CoeffSeries::new(v).unwrap();
        assert_eq!(livingston(&p, 1, 4, c(5.0, 2.0)).unwrap(), c(0.3, 0.9));
    }

    #[test]
    fn livingston_index_checks() {
        let hp = CoeffSeries::half_plane(4);
        assert!(matches!(livingston(&hp, 0, 3, c(1.0, 0.0)), Err(Error::Precondition(_))));
        assert!(matches!(livingston(&hp, 3, 3, c(1.0, 0.0)), Err(Error::Precondition(_))));
        assert!(matches!(livingston(&hp, 1, 5, c(1.0, 0.0)), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn bounds() {
        assert_eq!(bound_livingston(c(1.0, 0.0)), 2.0);
        assert_eq!(bound_livingston(c(0.5, 0.0)), 2.0);
        assert_eq!(bound_livingston(c(2.0, 0.0)), 6.0);
        assert_eq!(bound_a(0, c(7.0, 3.0)), 2.0);
        for k in 0..8 {
            assert_eq!(bound_a(k, c(1.0, 0.0)), 2.0);
        }
        assert_eq!(bound_a(3, c(2.0, 0.0)), 54.0);
    }

    #[test]
    fn a_det_initial_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let mut v = vec![c(1.0, 0.0)];
            v.extend((0..9).map(|_| rand_c(&mut rng, 2.0)));
            let p = CoeffSeries::new(v).unwrap();
            let w = rand_c(&mut rng, 2.0);
            for n in 1..=6 {
                assert_eq!(a_det(&p, 0, n, w).unwrap(), p[n]);
                let a1 = p[n + 1] - w * p[1] * p[n];
                assert!(agree(a_det(&p, 1, n, w).unwrap(), a1, 1e-13));
                let a2 = p[n + 2] - w * p[1] * p[n + 1] - w * p[2] * p[n] + w * w * p[1] * p[1] * p[n];
                assert!(agree(a_det(&p, 2, n, w).unwrap(), a2, 1e-13));
            }
        }
    }

    #[test]
    fn a_det_symbolic_k3() {
        // cofactor expansion of the 4x4 written out by hand
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..50 {
            let mut v = vec![c(1.0, 0.0)];
            v.extend((0..8).map(|_| rand_c(&mut rng, 2.0)));
            let p = CoeffSeries::new(v).unwrap();
            let w = rand_c(&mut rng, 2.0);
            let n = 2;
            let (a1, a2, a3) = (w * p[1], w * p[2], w * p[3]);
            // reciprocal of 1 + a1 z + a2 z^2 + a3 z^3 up to z^3
            let q1 = -a1;
            let q2 = a1 * a1 - a2;
            let q3 = -a1 * a1 * a1 + 2.0 * a1 * a2 - a3;
            let expected = p[n + 3] + q1 * p[n + 2] + q2 * p[n + 1] + q3 * p[n];
            assert!(agree(a_det(&p, 3, n, w).unwrap(), expected, 1e-12));
        }
    }

    #[test]
    fn a_det_half_plane_pattern() {
        let hp = CoeffSeries::half_plane(16);
        for w in w_grid() {
            for k in 0..=6 {
                for n in 1..=6 {
                    let want = 2.0 * (c(1.0, 0.0) - 2.0 * w).powi(k as i32);
                    assert!(agree(a_det(&hp, k, n, w).unwrap(), want, 1e-12), "k={k} n={n} w={w}");
                }
            }
        }
    }

    #[test]
    fn a_det_requires_length() {
        let hp = CoeffSeries::half_plane(4);
        assert!(matches!(a_det(&hp, 2, 3, c(1.0, 0.0)), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(a_det(&hp, 1, 0, c(1.0, 0.0)), Err(Error::Precondition(_))));
    }

    #[test]
    fn q_recursion_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let p = coefficients(&random_measure(4, 8).unwrap(), 12);
        for _ in 0..100 {
            let lambda = Complex64::from_polar(1.0, rng.gen_range(0.0..TAU));
            let w = rand_c(&mut rng, 2.0);
            let n = rng.gen_range(1..=6);
            let q1 = q_eval(&p, 1, n, w, lambda).unwrap();
            assert!(agree(q1, lambda.powi(n as i32) - w * p[n], 1e-13));
            let k = rng.gen_range(1..=4);
            let q0 = q_eval(&p, k, n, c(0.0, 0.0), lambda).unwrap();
            assert!(agree(q0, lambda.powi((n + k - 1) as i32), 1e-13));
            for k in 1..=4 {
                let direct = q_matrix_det(&p, k, n, w, lambda);
                assert!(agree(q_eval(&p, k, n, w, lambda).unwrap(), direct, 1e-10));
            }
        }
        assert!(matches!(q_eval(&p, 1, 1, c(1.0, 0.0), c(0.5, 0.0)), Err(Error::Domain(_))));
        assert!(matches!(q_eval(&p, 0, 1, c(1.0, 0.0), c(1.0, 0.0)), Err(Error::Precondition(_))));
    }

    #[test]
    fn herglotz_route_examples() {
        let mu = random_measure(5, 17).unwrap();
        assert_eq!(a_herglotz(&mu, 0, 3, c(0.7, 0.1)).unwrap(), coefficient(&mu, 3));

        let one = HerglotzMeasure::point_mass(0.0);
        let w = c(1.3, -0.4);
        let want = 2.0 * (c(1.0, 0.0) - 2.0 * w).powi(2);
        assert!(agree(a_herglotz(&one, 2, 1, w).unwrap(), want, 1e-13));
    }

    #[test]
    fn three_routes_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for seed in 0..200 {
            let mu = random_measure(rng.gen_range(1..=8), seed).unwrap();
            let p = coefficients(&mu, 12);
            let w = rand_c(&mut rng, 2.0);
            for k in 0..=4 {
                for n in 1..=6 {
                    let det = a_det(&p, k, n, w).unwrap();
                    assert!(agree(a_herglotz(&mu, k, n, w).unwrap(), det, 1e-10));
                    if n > k {
                        assert!(agree(a_delsarte(&p, k, n, w).unwrap(), det, 1e-10));
                    }
                }
            }
        }
    }

    #[test]
    fn delsarte_examples() {
        let mu = random_measure(3, 77).unwrap();
        let p = coefficients(&mu, 10);
        let w = c(-0.4, 0.9);
        for n in 2..=6 {
            let want = p[n + 1] - w * p[1] * p[n];
            assert!(agree(a_delsarte(&p, 1, n, w).unwrap(), want, 1e-13));
        }
        let one = c(1.0, 0.0);
        assert!(agree(a_delsarte(&p, 2, 3, one).unwrap(), a_det(&p, 2, 3, one).unwrap(), 1e-10));

        let hp = CoeffSeries::half_plane(8);
        let want = 2.0 * (one - 2.0 * w).powi(2);
        assert!(agree(a_delsarte(&hp, 2, 3, w).unwrap(), want, 1e-12));

        assert!(matches!(a_delsarte(&p, 2, 2, w), Err(Error::Precondition(_))));
        assert!(matches!(a_delsarte(&p, 3, 1, w), Err(Error::Precondition(_))));
    }

    #[test]
    fn last_column_expansion() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for seed in 0..100 {
            let p = coefficients(&random_measure(rng.gen_range(1..=8), seed).unwrap(), 14);
            let w = rand_c(&mut rng, 2.0);
            for k in 0..=4 {
                for m in 0..=5 {
                    let lhs = a_det(&p, k + 1, m + 1, w).unwrap();
                    let coef = wronski_coefficient(&perturb(&p, w, k + 1).unwrap(), k + 1).unwrap();
                    let rhs = a_det(&p, k, m + 2, w).unwrap() + p[m + 1] * coef;
                    assert!(agree(lhs, rhs, 1e-10), "k={k} m={m}");
                }
            }
        }
    }

    #[test]
    fn bounds_hold_for_measures() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let grid = w_grid();
        for seed in 0..300 {
            let p = coefficients(&random_measure(rng.gen_range(1..=8), seed).unwrap(), 12);
            for &w in &grid {
                for n in 2..=6 {
                    for k in 1..n {
                        assert!(livingston(&p, k, n, w).unwrap().norm() <= bound_livingston(w) + 1e-9);
                    }
                }
                for k in 0..=4 {
                    for n in 1..=6 {
                        assert!(a_det(&p, k, n, w).unwrap().norm() <= bound_a(k, w) + 1e-9);
                    }
                }
            }
        }
    }

    #[test]
    fn unnormalized_livingston_bound() {
        // p = x q + i y with q in the class; compare against the rescaled inequality
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for seed in 0..200 {
            let q = coefficients(&random_measure(rng.gen_range(1..=6), seed).unwrap(), 8);
            let (x, y) = (rng.gen_range(0.1..3.0), rng.gen_range(-3.0..3.0));
            let p0 = c(x, y);
            let p: Vec<Complex64> = (0..=8).map(|j| if j == 0 { p0 } else { x * q[j] }).collect();
            let p = CoeffSeries::new(p).unwrap();
            let back = crate::herglotz::normalize(p0, &p).unwrap();
            for (a, b) in back.coeffs().iter().zip(q.coeffs()) {
                assert!((a - b).norm() < 1e-13);
            }
            let w = rand_c(&mut rng, 2.0);
            let ratio = p0.re / p0.norm();
            for n in 2..=8 {
                for k in 1..n {
                    let lhs = (p[n] / p0 - w * p[k] * p[n - k] / (p0 * p0)).norm();
                    let inner = (c(1.0, 0.0) - 2.0 * w * p0.re / p0).norm();
                    let rhs = 2.0 * ratio * inner.max(1.0);
                    assert!(lhs <= rhs + 1e-9, "lhs {lhs} rhs {rhs}");
                    // same statement through the normalized inequality with w <- w x / p0
                    let w_eff = w * x / p0;
                    let normalized = livingston(&back, k, n, w_eff).unwrap().norm() * x / p0.norm();
                    assert!((normalized - lhs).abs() < 1e-12);
                    assert!((bound_livingston(w_eff) * x / p0.norm() - rhs).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn shift_and_brown_examples() {
        let mu = random_measure(4, 21).unwrap();
        let p = coefficients(&mu, 12);
        let s = generalized_shift(&p, 2, 3, c(0.0, 0.0)).unwrap();
        assert_eq!(s.rhs, 2.0);
        assert!((s.lhs - p[5].norm()).abs() < 1e-15);

        let hp = CoeffSeries::half_plane(12);
        for j in 0..16 {
            let nu = TAU * j as f64 / 16.0;
            let s = generalized_shift(&hp, 2, 3, Complex64::from_polar(1.0, -nu)).unwrap();
            assert!((s.lhs - s.rhs).abs() < 1e-12);
            let b = brown(&hp, 2, 3, nu).unwrap();
            assert!((b.lhs - b.rhs).abs() < 1e-12, "nu {nu}: {b:?}");
        }

        let b = brown(&hp, 1, 1, 0.0).unwrap();
        assert_eq!((b.lhs, b.rhs), (0.0, 0.0));
        let b = brown(&hp, 1, 1, std::f64::consts::PI).unwrap();
        assert!((b.lhs - 4.0).abs() < 1e-15 && (b.rhs - 4.0).abs() < 1e-15);
    }

    #[test]
    fn brown_is_shift_at_unit_w() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for seed in 0..200 {
            let p = coefficients(&random_measure(rng.gen_range(1..=8), seed).unwrap(), 12);
            let nu = rng.gen_range(0.0..TAU);
            for n in 1..=6 {
                for m in 1..=6 {
                    let b = brown(&p, n, m, nu).unwrap();
                    let s = generalized_shift(&p, n, m, Complex64::from_polar(1.0, -nu)).unwrap();
                    assert!((b.lhs - s.lhs).abs() < 1e-12 && (b.rhs - s.rhs).abs() < 1e-12);
                    assert!(b.holds(1e-9));
                    let w = rand_c(&mut rng, 2.0);
                    assert!(generalized_shift(&p, n, m, w).unwrap().holds(1e-9));
                }
            }
        }
    }

    #[test]
    fn negative_radicand_is_reported() {
        let p = CoeffSeries::from_real(&[1.0, 5.0, 5.0, 5.0]).unwrap();
        assert!(matches!(brown(&p, 1, 1, 0.0), Err(Error::NotInClass { .. })));
        assert!(matches!(generalized_shift(&p, 1, 1, c(1.0, 0.0)), Err(Error::NotInClass { .. })));
    }

    #[test]
    fn grid_layout() {
        let g = w_grid();
        assert_eq!(g.len(), 193);
        assert_eq!(g[0], c(-1.0, -1.5));
        assert_eq!(g[168], c(2.0, 1.5));
        for w in &g[169..] {
            assert!((regime_modulus(*w) - 1.0).abs() < 1e-15);
            assert_eq!(regime(*w, 1e-12), Regime::Boundary);
        }
        assert_eq!(regime(c(0.5, 0.0), 1e-12), Regime::Inside);
        assert_eq!(regime(c(2.0, 0.0), 1e-12), Regime::Outside);
    }

    #[test]
    fn uniform_roots_cancel_low_coefficients() {
        let mu = roots_of_unity_measure(5, 0.0, &uniform_masses(5)).unwrap();
        let p = coefficients(&mu, 5);
        assert!(livingston(&p, 2, 5, c(0.5, 0.1)).unwrap().norm() - 2.0 < 1e-12);
    }
}
