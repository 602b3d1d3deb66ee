//! Discrete probability measures on the unit circle and the functions with
//! positive real part they generate.
//!
//! A measure `mu = sum_j m_j delta(lambda_j)` with `|lambda_j| = 1` produces
//!
//! ```text
//! p(z) = sum_j m_j (1 + lambda_j z) / (1 - lambda_j z),   p_n = 2 sum_j m_j lambda_j^n.
//! ```

use std::f64::consts::TAU;
use std::ops::Index;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tolerance::angle_distance;

/// Atoms closer than this (mod 2*pi) are merged.
pub const MERGE_TOLERANCE: f64 = 1e-9;

/// Constructors renormalize mass vectors whose total is within this of one.
pub const MASS_SUM_TOLERANCE: f64 = 1e-9;

/// A point mass on the unit circle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnitAtom {
    /// Radians, reduced to `[0, 2*pi)`.
    pub angle: f64,
    pub mass: f64,
}

impl UnitAtom {
    pub fn new(angle: f64, mass: f64) -> Self {
        UnitAtom {
            angle: reduce_angle(angle),
            mass,
        }
    }

    /// The support point `e^{i angle}`.
    #[inline]
    pub fn point(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.angle)
    }
}

pub fn reduce_angle(angle: f64) -> f64 {
    let r = angle.rem_euclid(TAU);
    // rem_euclid can return TAU itself for tiny negative inputs
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Finite probability measure on the unit circle.
///
/// Atoms are kept sorted by angle, pairwise separated by more than
/// [`MERGE_TOLERANCE`], with strictly positive masses summing to one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawMeasure")]
pub struct HerglotzMeasure {
    atoms: Vec<UnitAtom>,
}

#[derive(Deserialize)]
struct RawMeasure {
    atoms: Vec<UnitAtom>,
}

impl TryFrom<RawMeasure> for HerglotzMeasure {
    type Error = Error;

    fn try_from(raw: RawMeasure) -> Result<Self> {
        HerglotzMeasure::new(raw.atoms)
    }
}

impl HerglotzMeasure {
    /// Builds a measure, reducing angles, dropping zero masses, merging
    /// near-coincident atoms and renormalizing a total within
    /// [`MASS_SUM_TOLERANCE`] of one.
    pub fn new(atoms: impl IntoIterator<Item = UnitAtom>) -> Result<Self> {
        let mut kept = Vec::new();
        for atom in atoms {
            if !atom.mass.is_finite() || atom.mass < 0.0 {
                return Err(Error::Simplex(format!("mass {} is not a nonnegative number", atom.mass)));
            }
            if !atom.angle.is_finite() {
                return Err(Error::Domain(format!("angle {} is not finite", atom.angle)));
            }
            if atom.mass > 0.0 {
                kept.push(UnitAtom::new(atom.angle, atom.mass));
            }
        }
        if kept.is_empty() {
            return Err(Error::EmptyMeasure);
        }

        let total: f64 = kept.iter().map(|a| a.mass).sum();
        if (total - 1.0).abs() > MASS_SUM_TOLERANCE {
            return Err(Error::Simplex(format!("masses sum to {total}, expected 1")));
        }

        kept.sort_by(|a, b| a.angle.total_cmp(&b.angle));
        let mut merged: Vec<UnitAtom> = Vec::with_capacity(kept.len());
        for atom in kept {
            match merged.last_mut() {
                Some(last) if angle_distance(last.angle, atom.angle) < MERGE_TOLERANCE => {
                    last.mass += atom.mass;
                }
                _ => merged.push(atom),
            }
        }
        // the circle wraps: the last atom may sit just below 2*pi next to one at 0
        if merged.len() > 1 {
            let last = merged[merged.len() - 1];
            if angle_distance(last.angle, merged[0].angle) < MERGE_TOLERANCE {
                merged[0].mass += last.mass;
                merged.pop();
            }
        }

        let total: f64 = merged.iter().map(|a| a.mass).sum();
        for atom in &mut merged {
            atom.mass /= total;
        }
        Ok(HerglotzMeasure { atoms: merged })
    }

    /// Point mass at `e^{i angle}`.
    pub fn point_mass(angle: f64) -> Self {
        HerglotzMeasure {
            atoms: vec![UnitAtom::new(angle, 1.0)],
        }
    }

    /// Builds a measure from parallel angle and mass slices.
    pub fn from_parts(angles: &[f64], masses: &[f64]) -> Result<Self> {
        if angles.len() != masses.len() {
            return Err(Error::Simplex(format!(
                "{} angles but {} masses",
                angles.len(),
                masses.len()
            )));
        }
        Self::new(angles.iter().zip(masses).map(|(&a, &m)| UnitAtom::new(a, m)))
    }

    pub fn atoms(&self) -> &[UnitAtom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// The measure reflected through the real axis (angles negated).
    pub fn conjugate(&self) -> Self {
        let atoms = self.atoms.iter().map(|a| UnitAtom::new(-a.angle, a.mass));
        HerglotzMeasure::new(atoms).expect("reflection preserves validity")
    }

    /// The measure rotated by `e^{i by}`.
    pub fn rotate(&self, by: f64) -> Self {
        let atoms = self.atoms.iter().map(|a| UnitAtom::new(a.angle + by, a.mass));
        HerglotzMeasure::new(atoms).expect("rotation preserves validity")
    }
}

/// Truncated complex power series `c_0 + c_1 z + ... + c_N z^N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoeffSeries(Vec<Complex64>);

impl CoeffSeries {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Precondition("a series needs at least one coefficient".into()));
        }
        Ok(CoeffSeries(coeffs))
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// Coefficients of the half-plane function `(1 + z) / (1 - z)` up to degree `n`.
    pub fn half_plane(n: usize) -> Self {
        let mut c = vec![Complex64::new(2.0, 0.0); n + 1];
        c[0] = Complex64::new(1.0, 0.0);
        CoeffSeries(c)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<Complex64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always `false`; a series carries at least its constant term.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Highest stored degree.
    pub fn degree(&self) -> usize {
        self.0.len() - 1
    }

    /// Coefficient `j`, or zero beyond the stored length.
    pub fn get_or_zero(&self, j: usize) -> Complex64 {
        self.0.get(j).copied().unwrap_or_default()
    }

    /// Fails unless coefficient `index` is stored.
    pub fn require(&self, index: usize) -> Result<()> {
        if index < self.0.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                needed: index,
                len: self.0.len(),
            })
        }
    }
}

impl Index<usize> for CoeffSeries {
    type Output = Complex64;

    fn index(&self, j: usize) -> &Complex64 {
        &self.0[j]
    }
}

/// `p_n = 2 sum m_j lambda_j^n`, with `p_0 = 1`.
pub fn coefficient(mu: &HerglotzMeasure, n: usize) -> Complex64 {
    if n == 0 {
        return Complex64::new(1.0, 0.0);
    }
    let nf = n as f64;
    let sum: Complex64 = mu
        .atoms
        .iter()
        .map(|a| Complex64::from_polar(a.mass, nf * a.angle))
        .sum();
    2.0 * sum
}

/// `[p_0, p_1, ..., p_n]`.
pub fn coefficients(mu: &HerglotzMeasure, n: usize) -> CoeffSeries {
    CoeffSeries((0..=n).map(|j| coefficient(mu, j)).collect())
}

/// `p(z) = sum m_j (1 + lambda_j z) / (1 - lambda_j z)` for `|z| < 1`.
pub fn evaluate(mu: &HerglotzMeasure, z: Complex64) -> Result<Complex64> {
    if !(z.norm() < 1.0) {
        return Err(Error::Domain(format!("|z| = {} is not inside the unit disk", z.norm())));
    }
    let one = Complex64::new(1.0, 0.0);
    Ok(mu
        .atoms
        .iter()
        .map(|a| {
            let lz = a.point() * z;
            a.mass * (one + lz) / (one - lz)
        })
        .sum())
}

fn check_simplex(masses: &[f64], expected_len: usize) -> Result<()> {
    if masses.len() != expected_len {
        return Err(Error::Simplex(format!(
            "expected {expected_len} masses, got {}",
            masses.len()
        )));
    }
    if let Some(m) = masses.iter().find(|m| !m.is_finite() || **m < 0.0) {
        return Err(Error::Simplex(format!("mass {m} is negative")));
    }
    let total: f64 = masses.iter().sum();
    if (total - 1.0).abs() > MASS_SUM_TOLERANCE {
        return Err(Error::Simplex(format!("masses sum to {total}, expected 1")));
    }
    Ok(())
}

/// Uniform masses `1/n`.
pub fn uniform_masses(n: usize) -> Vec<f64> {
    vec![1.0 / n as f64; n]
}

/// Measure on the rotated roots of unity `e^{i phase} U_n`: atom `j` sits at
/// `phase + 2*pi*j/n` with mass `masses[j]`.
pub fn roots_of_unity_measure(n: usize, phase: f64, masses: &[f64]) -> Result<HerglotzMeasure> {
    if n == 0 {
        return Err(Error::Precondition("roots of unity need n >= 1".into()));
    }
    check_simplex(masses, n)?;
    let atoms = masses
        .iter()
        .enumerate()
        .map(|(j, &m)| UnitAtom::new(phase + TAU * j as f64 / n as f64, m));
    HerglotzMeasure::new(atoms)
}

/// Measure on the coset `e^{i alpha} U_d`. Every multiple `m` of `d` has
/// `p_m = 2 e^{i m alpha}`.
pub fn coset_measure(d: usize, alpha: f64, masses: &[f64]) -> Result<HerglotzMeasure> {
    roots_of_unity_measure(d, alpha, masses)
}

/// Normalizes `p_0 + p_1 z + ...` with `Re p_0 > 0` to `q = (p - i Im p_0) / Re p_0`.
///
/// `coeffs[0]` is ignored in favour of `p0`.
pub fn normalize(p0: Complex64, coeffs: &CoeffSeries) -> Result<CoeffSeries> {
    if !(p0.re > 0.0) {
        return Err(Error::Domain(format!("Re p0 = {} must be positive", p0.re)));
    }
    let x = p0.re;
    let mut out: Vec<Complex64> = coeffs.coeffs().iter().map(|c| c / x).collect();
    out[0] = Complex64::new(1.0, 0.0);
    Ok(CoeffSeries(out))
}

/// Random measure: angles i.i.d. uniform, masses from the uniform simplex.
pub fn random_measure(atom_count: usize, seed: u64) -> Result<HerglotzMeasure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_measure_with(atom_count, &mut rng)
}

/// As [`random_measure`], drawing from a caller-owned generator.
pub fn random_measure_with<R: Rng + ?Sized>(atom_count: usize, rng: &mut R) -> Result<HerglotzMeasure> {
    if atom_count == 0 {
        return Err(Error::Precondition("atom_count must be at least 1".into()));
    }
    let angles: Vec<f64> = (0..atom_count).map(|_| rng.gen_range(0.0..TAU)).collect();
    let weights: Vec<f64> = (0..atom_count).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let total: f64 = weights.iter().sum();
    let masses: Vec<f64> = weights.iter().map(|w| w / total).collect();
    HerglotzMeasure::from_parts(&angles, &masses)
}
