//! Coefficient functionals for analytic functions with positive real part.
//!
//! Functions `p(z) = 1 + p_1 z + p_2 z^2 + ...` on the unit disk with
//! `Re p > 0` are generated from finite probability measures on the unit
//! circle ([`herglotz`]). On top of that this crate evaluates the generalized
//! Livingston functional `p_n - w p_k p_{n-k}`, the determinant functional
//! `A_{k,n}(w)` along three independent routes, Brown's shift inequality
//! ([`functionals`]); constructs and recognizes equality cases ([`extremal`]);
//! certifies sharpness numerically ([`search`]); and transfers the bounds to
//! self-maps of the disk ([`schwarz`]).

// `!(x > 0.0)` style checks are deliberate: they also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod extremal;
pub mod functionals;
pub mod herglotz;
pub mod linalg;
pub mod schwarz;
pub mod search;
pub mod series;
pub mod tolerance;

pub use error::{Error, Result};
pub use functionals::{FunctionalParams, Inequality, Regime};
pub use herglotz::{CoeffSeries, HerglotzMeasure, UnitAtom};
pub use num_complex::Complex64;
pub use search::{Objective, SearchConfig, SearchResult};
