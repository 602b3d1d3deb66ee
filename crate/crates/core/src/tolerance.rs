//! Comparison helpers shared by tests, sweeps and the classifier.
//!
//! Relative error is used for magnitudes of at least one; below that an
//! absolute threshold of `1e-12` applies.

use num_complex::Complex64;

pub const ABSOLUTE_FLOOR: f64 = 1e-12;

/// Error between two complex numbers under the relative/absolute switch at
/// magnitude one. Returned as a value in the units the caller compares
/// against its tolerance.
pub fn mixed_error(a: Complex64, b: Complex64) -> f64 {
    let scale = a.norm().max(b.norm());
    let diff = (a - b).norm();
    if scale < 1.0 {
        diff
    } else {
        diff / scale
    }
}

/// `true` when `a` and `b` agree to `rel` relatively, or to the absolute
/// floor when both are small.
pub fn agree(a: Complex64, b: Complex64, rel: f64) -> bool {
    let scale = a.norm().max(b.norm());
    let diff = (a - b).norm();
    if scale < 1.0 {
        diff <= ABSOLUTE_FLOOR.max(rel)
    } else {
        diff <= rel * scale
    }
}

/// Angular distance between two angles, in `[0, pi]`.
pub fn angle_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(std::f64::consts::TAU);
    d.min(std::f64::consts::TAU - d)
}
