//! Numerical tolerances and grid defaults shared by every module.
//!
//! Each value is the default of a field in [`Tolerances`] or
//! [`crate::verifier::VerifierSettings`]; the CLI exposes the ones that
//! matter to users as flags.

use serde::{Deserialize, Serialize};

/// Default truncation order for power series.
pub const DEFAULT_ORDER: usize = 64;
/// Largest truncation order the adaptive generators will try.
pub const MAX_ORDER: usize = 512;
/// Uniform grid size for boundary margin profiles.
pub const DEFAULT_MARGIN_GRID: usize = 4096;
/// Uniform grid size for admissibility minima.
pub const DEFAULT_ADMISSIBILITY_GRID: usize = 8192;
/// Angular grid per radius for subordination checks.
pub const DEFAULT_SUBORDINATION_GRID: usize = 2048;
/// Exhaustion radii for subordination checks.
pub const DEFAULT_RADII: [f64; 3] = [0.9, 0.99, 0.999];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Coefficient-level agreement of series identities.
    pub coefficient: f64,
    /// Pointwise agreement of evaluations.
    pub evaluation: f64,
    /// Band around zero classified as `Boundary` in membership tests.
    pub boundary_band: f64,
    /// Slack on the margin criterion `min |Φ⁻¹(h(e^{it}))| ≥ 1`.
    pub criterion: f64,
    /// Largest admissible premise residual for generated solutions.
    pub residual: f64,
    /// Largest admissible truncation tail at the outermost radius.
    pub tail: f64,
    /// Angular radius excluded around singular boundary points.
    pub puncture: f64,
    /// Angular resolution of golden-section refinement.
    pub refine: f64,
    /// Absolute resolution of threshold bisection in β.
    pub bisection: f64,
    /// Step of the central finite-difference derivative cross-check.
    pub fd_step: f64,
    /// Agreement required between closed-form and finite-difference derivatives.
    pub fd_agreement: f64,
    /// Lower bound of the closed-form exponent interval (−1, 3] is open at this slack.
    pub exponent_open: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            coefficient: 1e-12,
            evaluation: 1e-10,
            boundary_band: 1e-12,
            criterion: 1e-9,
            residual: 1e-9,
            tail: 1e-9,
            puncture: 1e-6,
            refine: 1e-8,
            bisection: 1e-6,
            fd_step: 1e-6,
            fd_agreement: 1e-5,
            exponent_open: 1e-9,
        }
    }
}
