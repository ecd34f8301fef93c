//! Target functions `q`, membership in their image regions, and the inverse
//! maps `Φ⁻¹` that turn a containment question into `|Φ⁻¹(w)| < 1`.
//!
//! Two families are supported:
//!
//! * `SqrtLemniscate`: `q(z) = √(1+z)` (principal branch, cut along
//!   `z ∈ (−∞, −1]`), whose image is the right lobe of `|w² − 1| < 1`.
//! * `Janowski(A, B)`: `q(z) = (1+Az)/(1+Bz)` with `−1 ≤ B < A ≤ 1`. For
//!   `|B| = 1` the image is a half-plane; the inverse-map criterion covers
//!   it without special cases.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::tolerance::Tolerances;

/// Points this close to a pole count as hitting it.
const POLE_EPS: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RegionError {
    #[error("invalid Janowski parameters A = {a}, B = {b}: need -1 <= B < A <= 1")]
    InvalidJanowski { a: f64, b: f64 },
    #[error("target function is singular at z = {0}")]
    SingularPoint(Complex64),
    #[error("inverse map has a pole at w = {0}")]
    InverseMapPole(Complex64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum TargetRegion {
    SqrtLemniscate,
    Janowski { a: f64, b: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    Inside,
    Boundary,
    Outside,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Membership {
    /// Positive inside, zero on the boundary, negative outside.
    pub margin: f64,
    pub classification: Classification,
}

impl Membership {
    fn from_margin(margin: f64, band: f64) -> Self {
        let classification = if margin.abs() <= band {
            Classification::Boundary
        } else if margin > 0.0 {
            Classification::Inside
        } else {
            Classification::Outside
        };
        Self {
            margin,
            classification,
        }
    }
}

impl TargetRegion {
    pub fn janowski(a: f64, b: f64) -> Result<Self, RegionError> {
        if !(-1.0..=1.0).contains(&a) || !(-1.0..=1.0).contains(&b) || b >= a {
            return Err(RegionError::InvalidJanowski { a, b });
        }
        Ok(Self::Janowski { a, b })
    }

    /// `q(z)`.
    pub fn eval(&self, z: Complex64) -> Result<Complex64, RegionError> {
        match *self {
            Self::SqrtLemniscate => Ok((1.0 + z).sqrt()),
            Self::Janowski { a, b } => {
                let den = 1.0 + b * z;
                if den.norm() < POLE_EPS {
                    return Err(RegionError::SingularPoint(z));
                }
                Ok((1.0 + a * z) / den)
            }
        }
    }

    /// `Φ⁻¹(w)`: `w² − 1` or `(w − 1)/(A − Bw)`.
    pub fn phi_inverse(&self, w: Complex64) -> Result<Complex64, RegionError> {
        match *self {
            Self::SqrtLemniscate => Ok(w * w - 1.0),
            Self::Janowski { a, b } => {
                let den = a - b * w;
                if den.norm() < POLE_EPS {
                    return Err(RegionError::InverseMapPole(w));
                }
                Ok((w - 1.0) / den)
            }
        }
    }

    /// Signed membership margin of `w` in `q(𝔻)` with the default boundary band.
    pub fn membership(&self, w: Complex64) -> Membership {
        self.membership_with(w, &Tolerances::default())
    }

    /// Signed membership margin of `w` in `q(𝔻)`.
    ///
    /// `1 − |Φ⁻¹(w)|` for points the inverse map sends back into the disk.
    /// For the lemniscate the left lobe also satisfies `|w² − 1| < 1` but is
    /// not in `q(𝔻)`, so points with `Re w < 0` get the non-positive margin
    /// `−|1 − |w² − 1|| − |Re w|`, which is continuous across the imaginary
    /// axis. A Janowski inverse-map pole yields margin `−∞`.
    pub fn membership_with(&self, w: Complex64, tol: &Tolerances) -> Membership {
        let margin = match *self {
            Self::SqrtLemniscate => {
                let raw = 1.0 - (w * w - 1.0).norm();
                if w.re >= 0.0 {
                    raw
                } else {
                    -raw.abs() - w.re.abs()
                }
            }
            Self::Janowski { .. } => match self.phi_inverse(w) {
                Ok(u) => 1.0 - u.norm(),
                Err(_) => f64::NEG_INFINITY,
            },
        };
        Membership::from_margin(margin, tol.boundary_band)
    }

    /// Samples of the boundary curve `q(e^{it})`, skipping singular angles.
    pub fn boundary_curve(&self, samples: usize) -> Vec<Complex64> {
        (0..samples)
            .filter_map(|j| {
                let t = -std::f64::consts::PI + std::f64::consts::TAU * j as f64 / samples as f64;
                self.eval(Complex64::from_polar(1.0, t)).ok()
            })
            .filter(|w| w.re.is_finite() && w.im.is_finite())
            .collect()
    }
}
