//! Numerical verification of the lemmas.
//!
//! The proofs close with the boundary criterion `|Φ⁻¹(h(e^{it}))| ≥ 1`
//! together with positivity of a few real parts (admissibility). This module
//! measures both on dense grids with local refinement, searches for the
//! smallest `β` meeting the criterion, and checks subordination of concrete
//! series by sampling an exhaustion of the disk.
//!
//! Everything here is floating-point evidence, not proof. A positive
//! subordination margin certifies containment only at the sampled radii and
//! angles.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{
    self, AdmissibilityQuantity, CatalogError, LemmaId, LemmaParams, ThresholdResult,
    ThresholdStatus,
};
use crate::generators::{self, GeneratorError, SchwarzFunction};
use crate::regions::{Membership, TargetRegion};
use crate::search::{bisect_threshold, golden_section, smallest_local_minima};
use crate::series::PowerSeries;
use crate::tolerance::{
    Tolerances, DEFAULT_ADMISSIBILITY_GRID, DEFAULT_MARGIN_GRID, DEFAULT_ORDER, DEFAULT_RADII,
    DEFAULT_SUBORDINATION_GRID, MAX_ORDER,
};
use crate::winding::{winding_number, WindingError};

/// Number of sampled local minima refined by golden-section search.
const REFINE_COUNT: usize = 8;
/// Smallest accepted margin grid.
pub const MIN_GRID: usize = 64;
/// Angles of the finite-difference cross-check.
const FD_SAMPLES: usize = 64;
/// Finite-difference checks stay this far from singular angles.
const FD_CLEARANCE: f64 = 1e-2;
/// Margins within this relative distance of the minimum tie for argmin.
const TIE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifierError {
    #[error("{0} has no boundary margin criterion")]
    NoMarginCriterion(LemmaId),
    #[error("grid of {0} points is below the minimum of 64")]
    GridTooSmall(usize),
    #[error("radius {0} outside (0, 1]")]
    InvalidRadius(f64),
    #[error("premise inverse map has {zeros} pole(s) inside the disk")]
    PremiseMapPoleInsideDisk { zeros: i64 },
    #[error("pole diagnostic failed: {0}")]
    Winding(#[from] WindingError),
    #[error("{quantity:?} at t = {t}: closed form {closed} disagrees with finite difference {fd}")]
    DerivativeMismatch {
        quantity: AdmissibilityQuantity,
        t: f64,
        closed: f64,
        fd: f64,
    },
    #[error("{0:?}: non-finite value at t = {1}")]
    NonFinite(AdmissibilityQuantity, f64),
    #[error("margin criterion switches back to failing: {prev} then {next} at beta = {beta}")]
    NonMonotoneMargin { beta: f64, prev: f64, next: f64 },
    #[error("no threshold to search: {0}")]
    NoThreshold(String),
    #[error("constant term {0} does not match q(0) = 1")]
    ConstantTermMismatch(Complex64),
    #[error("hypothesis of {0} fails for these parameters")]
    HypothesisFails(LemmaId),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Generator(#[from] GeneratorError),
}

/// Grid sizes, radii and tolerances of a verification run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifierSettings {
    pub margin_grid: usize,
    pub admissibility_grid: usize,
    pub subordination_grid: usize,
    pub radii: Vec<f64>,
    /// Radius of the interior admissibility check.
    pub interior_radius: f64,
    /// Radius of the circle carrying the pole-winding diagnostic.
    pub winding_radius: f64,
    pub order: usize,
    pub max_order: usize,
    pub scan_points: usize,
    /// Treat a pole of `Φ⁻¹∘h` inside the disk as a criterion failure.
    pub strict_poles: bool,
    pub tol: Tolerances,
}

impl Default for VerifierSettings {
    fn default() -> Self {
        Self {
            margin_grid: DEFAULT_MARGIN_GRID,
            admissibility_grid: DEFAULT_ADMISSIBILITY_GRID,
            subordination_grid: DEFAULT_SUBORDINATION_GRID,
            radii: DEFAULT_RADII.to_vec(),
            interior_radius: 0.999,
            winding_radius: 1.0 - 1e-6,
            order: DEFAULT_ORDER,
            max_order: MAX_ORDER,
            scan_points: 64,
            strict_poles: false,
            tol: Tolerances::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MarginProfile {
    /// Sorted angles in `[−π, π]`, refined points included.
    pub t_samples: Vec<f64>,
    /// `|Φ⁻¹(h(e^{it}))|` at each angle.
    pub margins: Vec<f64>,
    pub min_margin: f64,
    pub argmin_t: f64,
    pub refined: bool,
    /// Excluded angles; each removes an arc of the puncture radius.
    pub punctures: Vec<f64>,
    pub grid_size: usize,
    /// Zeros of the inverse-map denominator `D′ − E′h` inside the disk.
    pub premise_poles: i64,
}

impl MarginProfile {
    pub fn passes(&self, tol: &Tolerances) -> bool {
        self.min_margin >= 1.0 - tol.criterion
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdmissibilityMin {
    pub quantity: AdmissibilityQuantity,
    pub radius: f64,
    pub value: f64,
    pub argmin_t: f64,
    /// Largest relative closed-form versus finite-difference discrepancy.
    pub fd_max_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdmissibilityRecord {
    pub quantity: AdmissibilityQuantity,
    /// Minimum on the unit circle, punctures excluded.
    pub boundary: AdmissibilityMin,
    /// Minimum on the interior circle.
    pub interior: AdmissibilityMin,
    pub passed: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Verified,
    HypothesisFails,
    CriterionFails,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub lemma: LemmaId,
    pub params: LemmaParams,
    pub feasible: bool,
    pub threshold: ThresholdResult,
    /// `None` for lemmas without a margin criterion or when the pole
    /// diagnostic fired.
    pub margin: Option<MarginProfile>,
    pub admissibility: Vec<AdmissibilityRecord>,
    pub verdict: Verdict,
    pub diagnostics: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanPoint {
    pub beta: f64,
    /// Minimum margin, `−∞` when the pole diagnostic fires.
    pub min_margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NumericThreshold {
    pub beta: f64,
    pub bracket: (f64, f64),
    pub scan: Vec<ScanPoint>,
    /// Scan steps on the passing side where the margin decreased.
    pub margin_decreases: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubordinationMargin {
    /// Minimum membership margin over all sampled points.
    pub margin: f64,
    pub radius: f64,
    pub t: f64,
    /// Tail estimate at the outermost radius.
    pub tail: f64,
    /// Whether the tail estimate is within tolerance.
    pub certified: bool,
    pub order: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialReport {
    pub schwarz: String,
    pub order: usize,
    pub residual: f64,
    pub premise_ok: bool,
    pub conclusion: SubordinationMargin,
}

fn angle_grid(n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |j| -PI + TAU * j as f64 / n as f64)
}

/// Distance between angles on the circle.
fn angular_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

/// Maps an angle into `(−π, π]`.
fn wrap(t: f64) -> f64 {
    let w = (t + PI).rem_euclid(TAU) - PI;
    if w <= -PI {
        w + TAU
    } else {
        w
    }
}

/// Shrinks `[lo, hi]` around `center` so it stays clear of every puncture.
fn clamp_bracket(center: f64, mut lo: f64, mut hi: f64, punctures: &[f64], radius: f64) -> (f64, f64) {
    for &s in punctures {
        for s in [s - TAU, s, s + TAU] {
            if s > lo - radius && s < hi + radius {
                if s <= center {
                    lo = lo.max(s + radius);
                } else {
                    hi = hi.min(s - radius);
                }
            }
        }
    }
    (lo, hi)
}

/// Position of the minimum, preferring the smallest `|t|` and then `t ≥ 0`
/// among near-ties.
fn argmin_with_ties(ts: &[f64], values: &[f64]) -> (f64, f64) {
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let band = TIE_TOL * min.abs().max(1.0);
    let t = ts
        .iter()
        .zip(values)
        .filter(|(_, &v)| v <= min + band)
        .map(|(&t, _)| if t <= -PI { PI } else { t })
        .min_by(|a, b| a.abs().total_cmp(&b.abs()).then(b.total_cmp(a)))
        .unwrap_or(0.0);
    (min, t)
}

/// Minimizes sampled `values` and refines the smallest local minima.
/// Returns sorted samples with refined points inserted.
fn refine_minima<F>(
    f: &F,
    ts: Vec<f64>,
    values: Vec<f64>,
    step: f64,
    punctures: &[f64],
    tol: &Tolerances,
) -> (Vec<f64>, Vec<f64>)
where
    F: Fn(f64) -> f64 + Sync,
{
    let minima = smallest_local_minima(&values, REFINE_COUNT, true);
    let refined: Vec<(f64, f64)> = minima
        .par_iter()
        .map(|&i| {
            let c = ts[i];
            let (lo, hi) = clamp_bracket(c, c - step, c + step, punctures, tol.puncture);
            let (t, v) = golden_section(f, lo, hi, tol.refine);
            (wrap(t), v)
        })
        .collect();
    let mut pairs: Vec<(f64, f64)> = ts.into_iter().zip(values).chain(refined).collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    pairs.dedup_by(|a, b| a.0 == b.0);
    pairs.into_iter().unzip()
}

pub struct Verifier {
    pub settings: VerifierSettings,
}

impl Default for Verifier {
    fn default() -> Self {
        Self::new(VerifierSettings::default())
    }
}

impl Verifier {
    pub fn new(settings: VerifierSettings) -> Self {
        Self { settings }
    }

    fn tol(&self) -> &Tolerances {
        &self.settings.tol
    }

    /// `|Φ⁻¹(h(e^{it}))|`; an inverse-map pole gives `+∞`.
    fn margin_at(lemma: LemmaId, params: &LemmaParams, region: TargetRegion, t: f64) -> Result<f64, CatalogError> {
        let h = catalog::premise_h_eval(lemma, params, Complex64::from_polar(1.0, t))?;
        Ok(region.phi_inverse(h).map_or(f64::INFINITY, |u| u.norm()))
    }

    /// Zeros of `D′ − E′h` inside `|z| < winding_radius`, where `Φ⁻¹(w) =
    /// (w − 1)/(D′ − E′w)`. Zero for the lemniscate premise.
    pub fn premise_pole_count(&self, lemma: LemmaId, params: &LemmaParams) -> Result<i64, VerifierError> {
        let TargetRegion::Janowski { a, b } = catalog::premise_region(lemma, params) else {
            return Ok(0);
        };
        if b == 0.0 {
            return Ok(0);
        }
        let den = |z: Complex64| catalog::premise_h_eval(lemma, params, z).ok().map(|h| a - b * h);
        Ok(winding_number(den, self.settings.winding_radius, 256)?)
    }

    /// Samples `|Φ⁻¹(h(e^{it}))|` on a uniform grid, punctures singular
    /// angles and refines the smallest local minima.
    ///
    /// Zeros of `D′ − E′h` are counted and recorded. They do not affect the
    /// margin: `Φ(𝔻)` is connected, contains `h(0)` and misses `∂h(𝔻)`
    /// whenever the margin is at least 1.
    pub fn boundary_margin_profile(
        &self,
        lemma: LemmaId,
        params: &LemmaParams,
    ) -> Result<MarginProfile, VerifierError> {
        if !lemma.has_margin_criterion() {
            return Err(VerifierError::NoMarginCriterion(lemma));
        }
        let n = self.settings.margin_grid;
        if n < MIN_GRID {
            return Err(VerifierError::GridTooSmall(n));
        }
        params.validate_shape(lemma)?;
        let zeros = self.premise_pole_count(lemma, params)?;
        if zeros > 0 && self.settings.strict_poles {
            return Err(VerifierError::PremiseMapPoleInsideDisk { zeros });
        }
        let tol = *self.tol();
        let region = catalog::premise_region(lemma, params);
        let punctures = catalog::singular_angles(lemma, params);
        let ts: Vec<f64> = angle_grid(n)
            .filter(|&t| punctures.iter().all(|&s| angular_distance(t, s) > tol.puncture))
            .collect();
        let values = ts
            .par_iter()
            .map(|&t| Self::margin_at(lemma, params, region, t))
            .collect::<Result<Vec<f64>, _>>()?;
        let f = |t: f64| Self::margin_at(lemma, params, region, t).unwrap_or(f64::INFINITY);
        let (t_samples, margins) = refine_minima(&f, ts, values, TAU / n as f64, &punctures, &tol);
        let (min_margin, argmin_t) = argmin_with_ties(&t_samples, &margins);
        Ok(MarginProfile {
            t_samples,
            margins,
            min_margin,
            argmin_t,
            refined: true,
            punctures,
            grid_size: n,
            premise_poles: zeros,
        })
    }

    fn quantity_closed(
        lemma: LemmaId,
        params: &LemmaParams,
        quantity: AdmissibilityQuantity,
        z: Complex64,
    ) -> Result<Complex64, CatalogError> {
        match quantity {
            AdmissibilityQuantity::ReZQprimeOverQ => catalog::z_q_prime_over_q(lemma, params, z),
            AdmissibilityQuantity::ReZHprimeOverQ => catalog::z_h_prime_over_q(lemma, params, z),
            AdmissibilityQuantity::RePhiOfQ => catalog::phi_of_q(lemma, params, z),
        }
    }

    /// The same complex quantity through central differences of `Q`, `h`, `q`.
    fn quantity_fd(
        lemma: LemmaId,
        params: &LemmaParams,
        quantity: AdmissibilityQuantity,
        z: Complex64,
        step: f64,
    ) -> Result<Complex64, CatalogError> {
        let diff = |f: &dyn Fn(Complex64) -> Result<Complex64, CatalogError>| -> Result<Complex64, CatalogError> {
            Ok((f(z + step)? - f(z - step)?) / (2.0 * step))
        };
        let q_big = catalog::dominant_q_eval(lemma, params, z)?;
        Ok(match quantity {
            AdmissibilityQuantity::ReZQprimeOverQ => {
                z * diff(&|w| catalog::dominant_q_eval(lemma, params, w))? / q_big
            }
            AdmissibilityQuantity::ReZHprimeOverQ => {
                z * diff(&|w| catalog::premise_h_eval(lemma, params, w))? / q_big
            }
            AdmissibilityQuantity::RePhiOfQ => {
                q_big / (z * diff(&|w| catalog::conclusion_q(lemma, params, w))?)
            }
        })
    }

    /// Minimum of the requested real part over `|z| = radius`, with a
    /// finite-difference cross-check of the closed form.
    pub fn admissibility_min(
        &self,
        lemma: LemmaId,
        params: &LemmaParams,
        quantity: AdmissibilityQuantity,
        radius: f64,
    ) -> Result<AdmissibilityMin, VerifierError> {
        if !(radius > 0.0 && radius <= 1.0) {
            return Err(VerifierError::InvalidRadius(radius));
        }
        params.validate(lemma)?;
        let tol = *self.tol();
        let n = self.settings.admissibility_grid;
        if n < MIN_GRID {
            return Err(VerifierError::GridTooSmall(n));
        }
        let punctures = if radius == 1.0 {
            catalog::singular_angles(lemma, params)
        } else {
            Vec::new()
        };
        let eval = |t: f64| -> Result<f64, VerifierError> {
            let v = Self::quantity_closed(lemma, params, quantity, Complex64::from_polar(radius, t))?.re;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(VerifierError::NonFinite(quantity, t))
            }
        };
        let ts: Vec<f64> = angle_grid(n)
            .filter(|&t| punctures.iter().all(|&s| angular_distance(t, s) > tol.puncture))
            .collect();
        let values = ts.par_iter().map(|&t| eval(t)).collect::<Result<Vec<f64>, _>>()?;
        let f = |t: f64| eval(t).unwrap_or(f64::INFINITY);
        let (ts, values) = refine_minima(&f, ts, values, TAU / n as f64, &punctures, &tol);
        let (value, argmin_t) = argmin_with_ties(&ts, &values);

        let mut fd_max_error: f64 = 0.0;
        for t in angle_grid(FD_SAMPLES).map(|t| t + PI / FD_SAMPLES as f64) {
            if punctures.iter().any(|&s| angular_distance(t, s) < FD_CLEARANCE) {
                continue;
            }
            let z = Complex64::from_polar(radius, t);
            let closed = Self::quantity_closed(lemma, params, quantity, z)?;
            let fd = Self::quantity_fd(lemma, params, quantity, z, tol.fd_step)?;
            let err = (closed - fd).norm() / closed.norm().max(1.0);
            if !(err <= tol.fd_agreement) {
                return Err(VerifierError::DerivativeMismatch {
                    quantity,
                    t,
                    closed: closed.re,
                    fd: fd.re,
                });
            }
            fd_max_error = fd_max_error.max(err);
        }
        Ok(AdmissibilityMin {
            quantity,
            radius,
            value,
            argmin_t,
            fd_max_error,
        })
    }

    /// Boundary and interior minima of every quantity the lemma needs.
    ///
    /// Several boundary minima are exactly zero (they touch at a singular
    /// angle or along the whole circle when `|B| = 1`), so a quantity passes
    /// when its boundary minimum is at least `−tol` and its interior minimum
    /// is strictly positive.
    pub fn admissibility(
        &self,
        lemma: LemmaId,
        params: &LemmaParams,
    ) -> Result<Vec<AdmissibilityRecord>, VerifierError> {
        lemma
            .required_admissibility()
            .iter()
            .map(|&quantity| {
                let boundary = self.admissibility_min(lemma, params, quantity, 1.0)?;
                let interior =
                    self.admissibility_min(lemma, params, quantity, self.settings.interior_radius)?;
                let passed = boundary.value >= -self.tol().criterion && interior.value > 0.0;
                Ok(AdmissibilityRecord {
                    quantity,
                    boundary,
                    interior,
                    passed,
                })
            })
            .collect()
    }

    /// Runs every check of the lemma at `params`.
    ///
    /// A failed numerical criterion outranks a failed hypothesis: the
    /// hypothesis is only sufficient, and the margin can meet the criterion
    /// below `β*`.
    pub fn check_superordination(
        &self,
        lemma: LemmaId,
        params: &LemmaParams,
    ) -> Result<VerificationReport, VerifierError> {
        params.validate(lemma)?;
        let feasible = catalog::feasibility_check(lemma, params);
        let threshold = catalog::closed_form_threshold(lemma, params)?;
        let mut diagnostics = Vec::new();
        let (margin, margin_ok) = if lemma.has_margin_criterion() {
            match self.boundary_margin_profile(lemma, params) {
                Ok(profile) => {
                    if profile.premise_poles > 0 {
                        diagnostics.push(format!(
                            "inverse map of the premise has {} pole(s) on h(D); containment follows from the boundary margin alone",
                            profile.premise_poles
                        ));
                    }
                    let ok = profile.passes(self.tol());
                    if !ok {
                        diagnostics.push(format!(
                            "min margin {:.12} at t = {:.9} is below 1",
                            profile.min_margin, profile.argmin_t
                        ));
                    }
                    (Some(profile), ok)
                }
                Err(e @ VerifierError::PremiseMapPoleInsideDisk { .. }) => {
                    diagnostics.push(e.to_string());
                    (None, false)
                }
                Err(e) => return Err(e),
            }
        } else {
            (None, true)
        };
        let admissibility = self.admissibility(lemma, params)?;
        for rec in admissibility.iter().filter(|r| !r.passed) {
            diagnostics.push(format!(
                "{:?}: boundary min {:.12}, interior min {:.12}",
                rec.quantity, rec.boundary.value, rec.interior.value
            ));
        }
        if !feasible {
            diagnostics.push(format!("hypothesis fails: {}", threshold.binding_constraint));
        }
        let criterion_ok = margin_ok && admissibility.iter().all(|r| r.passed);
        let verdict = if !criterion_ok {
            Verdict::CriterionFails
        } else if !feasible {
            Verdict::HypothesisFails
        } else {
            Verdict::Verified
        };
        Ok(VerificationReport {
            lemma,
            params: *params,
            feasible,
            threshold,
            margin,
            admissibility,
            verdict,
            diagnostics,
        })
    }

    /// Minimum margin at `β`, `−∞` when strict pole checking rejects it.
    pub fn min_margin_at(&self, lemma: LemmaId, params: &LemmaParams, beta: f64) -> Result<f64, VerifierError> {
        match self.boundary_margin_profile(lemma, &params.with_beta(beta)) {
            Ok(p) => Ok(p.min_margin),
            Err(VerifierError::PremiseMapPoleInsideDisk { .. }) => Ok(f64::NEG_INFINITY),
            Err(e) => Err(e),
        }
    }

    /// Smallest `β > 0` whose minimum margin is at least 1.
    ///
    /// A coarse scan over `[1e−6, 10β*]` must show the pass/fail indicator
    /// `min_margin ≥ 1` switching once. The margin itself need not be
    /// monotone: below the crossing it can oscillate, and above it some
    /// families approach their large-`β` limit from above. Decreases on the
    /// passing side are counted in `margin_decreases`.
    pub fn numeric_threshold(&self, lemma: LemmaId, params: &LemmaParams) -> Result<NumericThreshold, VerifierError> {
        if !lemma.has_margin_criterion() {
            return Err(VerifierError::NoMarginCriterion(lemma));
        }
        params.validate_shape(lemma)?;
        let closed = catalog::closed_form_threshold(lemma, params)?;
        let beta_star = match closed.status {
            ThresholdStatus::Feasible { beta_star } => beta_star,
            ThresholdStatus::AlwaysFeasible => {
                return Err(VerifierError::NoThreshold("closed form holds for every beta".into()))
            }
            ThresholdStatus::Infeasible => {
                return Err(VerifierError::NoThreshold("closed form is infeasible".into()))
            }
        };
        let tol = *self.tol();
        let (lo, hi) = (tol.bisection, 10.0 * beta_star);
        let m = self.settings.scan_points.max(2);
        let betas: Vec<f64> = (0..m).map(|j| lo + (hi - lo) * j as f64 / (m - 1) as f64).collect();
        let margins = betas
            .par_iter()
            .map(|&b| self.min_margin_at(lemma, params, b))
            .collect::<Result<Vec<f64>, _>>()?;
        let scan: Vec<ScanPoint> = betas
            .iter()
            .zip(&margins)
            .map(|(&beta, &min_margin)| ScanPoint { beta, min_margin })
            .collect();
        let passes = |v: f64| v >= 1.0;
        for w in scan.windows(2) {
            if passes(w[0].min_margin) && !passes(w[1].min_margin) {
                return Err(VerifierError::NonMonotoneMargin {
                    beta: w[1].beta,
                    prev: w[0].min_margin,
                    next: w[1].min_margin,
                });
            }
        }
        let margin_decreases = scan
            .windows(2)
            .filter(|w| passes(w[0].min_margin) && w[1].min_margin < w[0].min_margin)
            .count();
        let Some(first) = scan.iter().position(|s| passes(s.min_margin)) else {
            return Err(VerifierError::NoThreshold(format!(
                "margin {} below 1 at beta = {hi}",
                scan[m - 1].min_margin
            )));
        };
        if first == 0 {
            return Ok(NumericThreshold {
                beta: lo,
                bracket: (lo, hi),
                scan,
                margin_decreases,
            });
        }
        // relative resolution keeps small thresholds within β*(1 + 1e−6)
        let resolution = 0.25 * tol.bisection * beta_star.min(1.0);
        let pred = |b: f64| self.min_margin_at(lemma, params, b).map_or(false, passes);
        let beta = bisect_threshold(pred, betas[first - 1], betas[first], resolution);
        Ok(NumericThreshold {
            beta,
            bracket: (lo, hi),
            scan,
            margin_decreases,
        })
    }

    /// Minimum membership margin of `p(re^{it})` in `region` over the
    /// configured radii and a uniform angular grid.
    pub fn subordination_check(
        &self,
        p: &PowerSeries,
        region: TargetRegion,
    ) -> Result<SubordinationMargin, VerifierError> {
        let tol = *self.tol();
        let c0 = p.constant_term();
        if (c0 - 1.0).norm() > tol.coefficient {
            return Err(VerifierError::ConstantTermMismatch(c0));
        }
        if let Some(&r) = self.settings.radii.iter().find(|&&r| !(r > 0.0 && r < 1.0)) {
            return Err(VerifierError::InvalidRadius(r));
        }
        let n = self.settings.subordination_grid;
        let points: Vec<(f64, f64)> = self
            .settings
            .radii
            .iter()
            .flat_map(|&r| angle_grid(n).map(move |t| (r, t)))
            .collect();
        let margins: Vec<f64> = points
            .par_iter()
            .map(|&(r, t)| {
                let Membership { margin, .. } = region.membership_with(p.eval(Complex64::from_polar(r, t)), &tol);
                if margin.is_nan() {
                    f64::NEG_INFINITY
                } else {
                    margin
                }
            })
            .collect();
        let (i, &margin) = margins
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .expect("non-empty grid");
        let r_max = self.settings.radii.iter().copied().fold(0.0, f64::max);
        let tail = generators::tail_bound(p, r_max);
        Ok(SubordinationMargin {
            margin,
            radius: points[i].0,
            t: points[i].1,
            tail,
            certified: tail <= tol.tail,
            order: p.order(),
        })
    }

    /// Builds the premise-exact `p` for `w` and checks the conclusion.
    /// Requires the lemma's hypothesis to hold.
    pub fn implication_trial(
        &self,
        lemma: LemmaId,
        params: &LemmaParams,
        w: &SchwarzFunction,
    ) -> Result<TrialReport, VerifierError> {
        if !catalog::feasibility_check(lemma, params) {
            return Err(VerifierError::HypothesisFails(lemma));
        }
        self.trial_unchecked(lemma, params, w)
    }

    /// [`Verifier::implication_trial`] without the hypothesis check, for
    /// exploring `β` below the threshold.
    pub fn trial_unchecked(
        &self,
        lemma: LemmaId,
        params: &LemmaParams,
        w: &SchwarzFunction,
    ) -> Result<TrialReport, VerifierError> {
        let r_max = self.settings.radii.iter().copied().fold(0.0, f64::max);
        let sol = generators::solve_premise_adaptive(
            lemma,
            params,
            w,
            (self.settings.order, self.settings.max_order),
            r_max,
            self.tol(),
        )?;
        let conclusion = self.subordination_check(&sol.solution.p, catalog::conclusion_region(lemma, params))?;
        Ok(TrialReport {
            schwarz: w.family.describe(),
            order: sol.order,
            residual: sol.solution.residual,
            premise_ok: sol.solution.residual <= self.tol().residual,
            conclusion,
        })
    }
}
