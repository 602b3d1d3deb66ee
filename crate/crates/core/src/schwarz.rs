//! Self-maps of the disk fixing the origin, reached through
//! `p = (1 + phi) / (1 - phi)`, and the coefficient inequalities they inherit
//! from the Livingston and determinant bounds with `lambda = 1 - 2w`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::functionals::{a_det, livingston, Inequality};
use crate::herglotz::{coefficients, CoeffSeries, HerglotzMeasure};
use crate::series::phi_from_p;

/// Coefficients `a_0 = 0, a_1, ..., a_n` of the self-map attached to `mu`.
pub fn self_map_from_measure(mu: &HerglotzMeasure, n: usize) -> CoeffSeries {
    phi_from_p(&coefficients(mu, n), n).expect("p_0 + 1 = 2 is invertible")
}

/// Largest residual among
/// `p_1 = 2a_1`, `p_2 = 2(a_2 + a_1^2)`, `p_3 = 2(a_3 + 2a_1a_2 + a_1^3)`,
/// `p_4 = 2(a_4 + 2a_1a_3 + a_2^2 + 3a_1^2a_2 + a_1^4)`.
pub fn coefficient_relations_check(a: &CoeffSeries, p: &CoeffSeries) -> Result<f64> {
    a.require(4)?;
    p.require(4)?;
    let (a1, a2, a3, a4) = (a[1], a[2], a[3], a[4]);
    let rhs = [
        2.0 * a1,
        2.0 * (a2 + a1 * a1),
        2.0 * (a3 + 2.0 * a1 * a2 + a1.powi(3)),
        2.0 * (a4 + 2.0 * a1 * a3 + a2 * a2 + 3.0 * a1 * a1 * a2 + a1.powi(4)),
    ];
    Ok(rhs
        .iter()
        .enumerate()
        .map(|(i, r)| (p[i + 1] - r).norm())
        .fold(0.0, f64::max))
}

/// The six expressions inside the moduli of the corollary, in order.
pub fn corollary_expressions(a: &CoeffSeries, lambda: Complex64) -> Result<[Complex64; 6]> {
    a.require(4)?;
    if a[0].norm() > 1e-12 {
        return Err(Error::Precondition(format!("self-map must fix the origin, a_0 = {}", a[0])));
    }
    let (a1, a2, a3, a4) = (a[1], a[2], a[3], a[4]);
    let l = lambda;
    let one = Complex64::new(1.0, 0.0);
    let a1sq = a1 * a1;
    Ok([
        a3 + (one + l) * a1 * a2 + l * a1sq * a1,
        a3 + 2.0 * l * a1 * a2 + l * l * a1sq * a1,
        a4 + (one + l) * a1 * a3 + a2 * a2 + (one + 2.0 * l) * a1sq * a2 + l * a1sq * a1sq,
        a4 + 2.0 * a1 * a3 + l * a2 * a2 + (one + 2.0 * l) * a1sq * a2 + l * a1sq * a1sq,
        a4 + (one + l) * a1 * a3 + l * a2 * a2 + l * (2.0 + l) * a1sq * a2 + l * l * a1sq * a1sq,
        a4 + 2.0 * l * a1 * a3 + l * a2 * a2 + 3.0 * l * l * a1sq * a2 + l * l * l * a1sq * a1sq,
    ])
}

/// Powers of `max{1, |lambda|}` bounding the six expressions.
const BOUND_POWERS: [i32; 6] = [1, 2, 1, 1, 2, 3];

/// The six corollary inequalities as `(lhs, rhs)` pairs.
pub fn corollary_values(a: &CoeffSeries, lambda: Complex64) -> Result<[Inequality; 6]> {
    let exprs = corollary_expressions(a, lambda)?;
    let base = lambda.norm().max(1.0);
    Ok(std::array::from_fn(|i| Inequality {
        lhs: exprs[i].norm(),
        rhs: base.powi(BOUND_POWERS[i]),
    }))
}

/// `|a_2 + lambda a_1^2| <= max{1, |lambda|}`.
pub fn schwarz_pick_warmup(a: &CoeffSeries, lambda: Complex64) -> Result<Inequality> {
    a.require(2)?;
    Ok(Inequality {
        lhs: (a[2] + lambda * a[1] * a[1]).norm(),
        rhs: lambda.norm().max(1.0),
    })
}

/// Which functional each corollary expression equals, up to the factor 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorollarySource {
    Livingston { k: usize, n: usize },
    Determinant { k: usize, n: usize },
}

pub const COROLLARY_SOURCES: [CorollarySource; 6] = [
    CorollarySource::Livingston { k: 1, n: 3 },
    CorollarySource::Determinant { k: 2, n: 1 },
    CorollarySource::Livingston { k: 1, n: 4 },
    CorollarySource::Livingston { k: 2, n: 4 },
    CorollarySource::Determinant { k: 2, n: 2 },
    CorollarySource::Determinant { k: 3, n: 1 },
];

/// Largest `|2 * expression - functional|` over the six identities, with
/// `w = (1 - lambda) / 2` and `p = coefficients(mu)`.
pub fn corollary_crosscheck(mu: &HerglotzMeasure, lambda: Complex64) -> f64 {
    let p = coefficients(mu, 4);
    let a = phi_from_p(&p, 4).expect("p_0 + 1 = 2 is invertible");
    let w = (Complex64::new(1.0, 0.0) - lambda) / 2.0;
    let exprs = corollary_expressions(&a, lambda).expect("a has degree 4 and a_0 = 0");
    COROLLARY_SOURCES
        .iter()
        .zip(exprs)
        .map(|(source, e)| {
            let f = match *source {
                CorollarySource::Livingston { k, n } => livingston(&p, k, n, w),
                CorollarySource::Determinant { k, n } => a_det(&p, k, n, w),
            }
            .expect("indices within degree 4");
            (2.0 * e - f).norm()
        })
        .fold(0.0, f64::max)
}

/// The nine `lambda` values used by the corollary sweeps.
pub fn lambda_grid() -> [Complex64; 9] {
    let c = Complex64::new;
    [
        c(0.0, 0.0),
        c(1.0, 0.0),
        c(-1.0, 0.0),
        c(0.0, 1.0),
        c(0.0, -1.0),
        c(2.0, 0.0),
        c(-2.0, 0.0),
        c(1.0, 1.0),
        c(3.0, 0.0),
    ]
}
