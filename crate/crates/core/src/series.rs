//! Truncated power-series arithmetic.
//!
//! Every operation takes its truncation degree explicitly; inputs shorter
//! than the requested degree are zero-extended.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::herglotz::CoeffSeries;
use crate::linalg::{determinant, ComplexMatrix};

const UNIT_TOLERANCE: f64 = 1e-12;

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

/// Cauchy product of `a` and `b`, truncated at degree `n`.
pub fn multiply(a: &CoeffSeries, b: &CoeffSeries, n: usize) -> CoeffSeries {
    let out = (0..=n)
        .map(|m| {
            let hi = m.min(a.degree());
            (0..=hi).map(|j| a[j] * b.get_or_zero(m - j)).sum()
        })
        .collect();
    CoeffSeries::new(out).expect("n + 1 >= 1 coefficients")
}

/// Reciprocal `1/a` up to degree `n` by the recurrence
/// `q_0 = 1/a_0`, `q_m = -(1/a_0) sum_{j=1..m} a_j q_{m-j}`.
pub fn reciprocal(a: &CoeffSeries, n: usize) -> Result<CoeffSeries> {
    let a0 = a[0];
    if a0.norm() == 0.0 {
        return Err(Error::DivisionByZero);
    }
    let inv = a0.inv();
    let mut q: Vec<Complex64> = Vec::with_capacity(n + 1);
    q.push(inv);
    for m in 1..=n {
        let hi = m.min(a.degree());
        let s: Complex64 = (1..=hi).map(|j| a[j] * q[m - j]).sum();
        q.push(-inv * s);
    }
    CoeffSeries::new(q)
}

/// Coefficient `m` of `1/a` for `a_0 = 1` via Wronski's determinant:
/// `(-1)^m det H` where `H` is the `m x m` lower Hessenberg matrix with
/// `H[i][j] = a_{i-j+1}` on and below the superdiagonal (whose entries are `a_0 = 1`).
pub fn wronski_coefficient(a: &CoeffSeries, m: usize) -> Result<Complex64> {
    if m == 0 {
        return Err(Error::Precondition("Wronski's formula needs m >= 1".into()));
    }
    if (a[0] - one()).norm() > UNIT_TOLERANCE {
        return Err(Error::Precondition(format!("leading coefficient {} is not 1", a[0])));
    }
    a.require(m)?;
    let mut h = ComplexMatrix::zeros(m);
    for i in 0..m {
        for j in 0..=(i + 1).min(m - 1) {
            h[(i, j)] = a[i + 1 - j];
        }
    }
    let det = determinant(&h);
    Ok(if m.is_multiple_of(2) { det } else { -det })
}

/// `1 + w(p_1 z + ... + p_k z^k) + p_{k+1} z^{k+1} + ...`
pub fn perturb(p: &CoeffSeries, w: Complex64, k: usize) -> Result<CoeffSeries> {
    p.require(k)?;
    let out = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(j, &c)| if (1..=k).contains(&j) { w * c } else { c })
        .collect();
    CoeffSeries::new(out)
}

/// `p = (1 + phi) / (1 - phi)` for a self-map series `phi` with `phi(0) = 0`.
pub fn p_from_phi(a: &CoeffSeries, n: usize) -> Result<CoeffSeries> {
    if a[0].norm() > UNIT_TOLERANCE {
        return Err(Error::Precondition(format!("self-map must fix the origin, a_0 = {}", a[0])));
    }
    let plus = shift_constant(a, one());
    let minus = CoeffSeries::new(
        (0..=n.max(a.degree()))
            .map(|j| if j == 0 { one() } else { -a.get_or_zero(j) })
            .collect(),
    )?;
    Ok(multiply(&plus, &reciprocal(&minus, n)?, n))
}

/// `phi = (p - 1) / (p + 1)`, the inverse of [`p_from_phi`].
pub fn phi_from_p(p: &CoeffSeries, n: usize) -> Result<CoeffSeries> {
    let minus = shift_constant(p, -one());
    let plus = shift_constant(p, one());
    Ok(multiply(&minus, &reciprocal(&plus, n)?, n))
}

fn shift_constant(a: &CoeffSeries, by: Complex64) -> CoeffSeries {
    let mut v = a.coeffs().to_vec();
    v[0] += by;
    CoeffSeries::new(v).expect("nonempty")
}
