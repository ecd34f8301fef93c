//! The eleven subordination lemmas as data.
//!
//! Every lemma has the shape "if `Ψ(p) ≺ Φ` then `p ≺ q`", where `Ψ` is a
//! first-order differential expression in `p`. Each row records
//!
//! * the differential form of `Ψ` ([`Form`]),
//! * the premise region (image of `Φ`) and the conclusion region (image of `q`),
//! * the dominant `h = ν(q) + Q` with `Q = z q′ φ(q)`,
//! * the hypothesis inequality on `β` and its closed-form solution.
//!
//! All catalog formulas have real coefficients, so every evaluator commutes
//! with complex conjugation.

use std::f64::consts::{PI, SQRT_2};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::regions::TargetRegion;

/// Denominators smaller than this are treated as poles.
const SINGULAR_EPS: f64 = 1e-14;
/// `|A| = 1` (or `|B|`, `|D|`, `|E|`) is detected at this slack.
const UNIT_EPS: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CatalogError {
    #[error("invalid parameters for {lemma}: {}", issues.join("; "))]
    InvalidParameters { lemma: LemmaId, issues: Vec<String> },
    #[error("{lemma} formula is singular at z = {z}")]
    SingularPoint { lemma: LemmaId, z: Complex64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LemmaId {
    /// `1 + βzp′/p^k ≺ (1+Az)/(1+Bz) ⇒ p ≺ √(1+z)`, `−1 < k ≤ 3`.
    #[serde(rename = "L1")]
    L1KFamily,
    /// `1 + βzp′ ≺ √(1+z) ⇒ p ≺ (1+Az)/(1+Bz)`.
    #[serde(rename = "L2")]
    L2Full,
    /// `1 + βzp′/p ≺ √(1+z) ⇒ p ≺ (1+Az)/(1+Bz)`.
    #[serde(rename = "L3")]
    L3OverP,
    /// `1 + βzp′/p² ≺ √(1+z) ⇒ p ≺ (1+Az)/(1+Bz)`.
    #[serde(rename = "L4")]
    L4OverP2,
    /// `p + βzp′ ≺ √(1+z) ⇒ p ≺ √(1+z)`.
    #[serde(rename = "L5")]
    L5Sum,
    /// `p + βzp′/p ≺ √(1+z) ⇒ p ≺ √(1+z)`.
    #[serde(rename = "L6")]
    L6SumOverP,
    /// `p + βzp′/p² ≺ √(1+z) ⇒ p ≺ √(1+z)`.
    #[serde(rename = "L7")]
    L7SumOverP2,
    /// `p + βzp′/p ≺ √(1+z) ⇒ p ≺ (1+Az)/(1+Bz)`.
    #[serde(rename = "L8")]
    L8SumJanowski,
    /// `1 + βzp′ ≺ (1+Dz)/(1+Ez) ⇒ p ≺ (1+Az)/(1+Bz)`.
    #[serde(rename = "L9")]
    L9De,
    /// `1 + βzp′/p ≺ (1+Dz)/(1+Ez) ⇒ p ≺ (1+Az)/(1+Bz)`.
    #[serde(rename = "L10")]
    L10DeOverP,
    /// `1 + βzp′/p² ≺ (1+Dz)/(1+Ez) ⇒ p ≺ (1+Az)/(1+Bz)`.
    #[serde(rename = "L11")]
    L11DeOverP2,
}

impl LemmaId {
    pub const ALL: [LemmaId; 11] = [
        LemmaId::L1KFamily,
        LemmaId::L2Full,
        LemmaId::L3OverP,
        LemmaId::L4OverP2,
        LemmaId::L5Sum,
        LemmaId::L6SumOverP,
        LemmaId::L7SumOverP2,
        LemmaId::L8SumJanowski,
        LemmaId::L9De,
        LemmaId::L10DeOverP,
        LemmaId::L11DeOverP2,
    ];

    /// Lemmas whose proof ends with the boundary criterion `|Φ⁻¹(h(e^{it}))| ≥ 1`.
    pub const WITH_MARGIN: [LemmaId; 8] = [
        LemmaId::L1KFamily,
        LemmaId::L2Full,
        LemmaId::L3OverP,
        LemmaId::L4OverP2,
        LemmaId::L8SumJanowski,
        LemmaId::L9De,
        LemmaId::L10DeOverP,
        LemmaId::L11DeOverP2,
    ];

    /// Short label, `"L1"` through `"L11"`.
    pub fn label(self) -> &'static str {
        match self {
            LemmaId::L1KFamily => "L1",
            LemmaId::L2Full => "L2",
            LemmaId::L3OverP => "L3",
            LemmaId::L4OverP2 => "L4",
            LemmaId::L5Sum => "L5",
            LemmaId::L6SumOverP => "L6",
            LemmaId::L7SumOverP2 => "L7",
            LemmaId::L8SumJanowski => "L8",
            LemmaId::L9De => "L9",
            LemmaId::L10DeOverP => "L10",
            LemmaId::L11DeOverP2 => "L11",
        }
    }

    pub fn statement(self) -> &'static str {
        match self {
            LemmaId::L1KFamily => "1 + beta z p'/p^k < (1+Az)/(1+Bz)  =>  p < sqrt(1+z)",
            LemmaId::L2Full => "1 + beta z p' < sqrt(1+z)  =>  p < (1+Az)/(1+Bz)",
            LemmaId::L3OverP => "1 + beta z p'/p < sqrt(1+z)  =>  p < (1+Az)/(1+Bz)",
            LemmaId::L4OverP2 => "1 + beta z p'/p^2 < sqrt(1+z)  =>  p < (1+Az)/(1+Bz)",
            LemmaId::L5Sum => "p + beta z p' < sqrt(1+z)  =>  p < sqrt(1+z)",
            LemmaId::L6SumOverP => "p + beta z p'/p < sqrt(1+z)  =>  p < sqrt(1+z)",
            LemmaId::L7SumOverP2 => "p + beta z p'/p^2 < sqrt(1+z)  =>  p < sqrt(1+z)",
            LemmaId::L8SumJanowski => "p + beta z p'/p < sqrt(1+z)  =>  p < (1+Az)/(1+Bz)",
            LemmaId::L9De => "1 + beta z p' < (1+Dz)/(1+Ez)  =>  p < (1+Az)/(1+Bz)",
            LemmaId::L10DeOverP => "1 + beta z p'/p < (1+Dz)/(1+Ez)  =>  p < (1+Az)/(1+Bz)",
            LemmaId::L11DeOverP2 => "1 + beta z p'/p^2 < (1+Dz)/(1+Ez)  =>  p < (1+Az)/(1+Bz)",
        }
    }

    pub fn has_margin_criterion(self) -> bool {
        !matches!(
            self,
            LemmaId::L5Sum | LemmaId::L6SumOverP | LemmaId::L7SumOverP2
        )
    }

    /// Whether the lemma reads `A`/`B`, `D`/`E`, `k`.
    pub fn uses_ab(self) -> bool {
        !matches!(
            self,
            LemmaId::L5Sum | LemmaId::L6SumOverP | LemmaId::L7SumOverP2
        )
    }

    pub fn uses_de(self) -> bool {
        matches!(
            self,
            LemmaId::L9De | LemmaId::L10DeOverP | LemmaId::L11DeOverP2
        )
    }

    pub fn uses_k(self) -> bool {
        self == LemmaId::L1KFamily
    }

    /// Admissibility quantities the lemma's proof needs positive.
    pub fn required_admissibility(self) -> &'static [AdmissibilityQuantity] {
        use AdmissibilityQuantity::*;
        match self {
            LemmaId::L5Sum | LemmaId::L6SumOverP | LemmaId::L7SumOverP2 => {
                &[ReZQprimeOverQ, RePhiOfQ]
            }
            LemmaId::L8SumJanowski => &[ReZQprimeOverQ, ReZHprimeOverQ],
            _ => &[ReZQprimeOverQ],
        }
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for LemmaId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let wanted = s.trim().to_ascii_uppercase();
        LemmaId::ALL
            .into_iter()
            .find(|id| id.label() == wanted)
            .ok_or_else(|| format!("unknown lemma '{s}' (expected L1..L11)"))
    }
}

/// Real parts whose positivity the Miller–Mocanu criteria require.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AdmissibilityQuantity {
    /// `Re(zQ′/Q)`: starlikeness of `Q`.
    ReZQprimeOverQ,
    /// `Re(zh′/Q)`.
    ReZHprimeOverQ,
    /// `Re φ(q)`.
    RePhiOfQ,
}

/// Shape of the differential expression on the premise side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Form {
    /// `1 + β z p′ / p^exponent`.
    Derivative { exponent: f64 },
    /// `p + β z p′ / p^power`.
    Sum { power: u32 },
}

impl Form {
    pub fn exponent(self) -> f64 {
        match self {
            Form::Derivative { exponent } => exponent,
            Form::Sum { power } => f64::from(power),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LemmaParams {
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "B")]
    pub b: f64,
    #[serde(rename = "D")]
    pub d: f64,
    #[serde(rename = "E")]
    pub e: f64,
    pub k: f64,
    pub beta: f64,
}

impl Default for LemmaParams {
    fn default() -> Self {
        Self {
            a: 1.0,
            b: 0.0,
            d: 1.0,
            e: 0.0,
            k: 1.0,
            beta: 1.0,
        }
    }
}

impl LemmaParams {
    pub fn with_ab(mut self, a: f64, b: f64) -> Self {
        self.a = a;
        self.b = b;
        self
    }

    pub fn with_de(mut self, d: f64, e: f64) -> Self {
        self.d = d;
        self.e = e;
        self
    }

    pub fn with_k(mut self, k: f64) -> Self {
        self.k = k;
        self
    }

    pub fn with_beta(mut self, beta: f64) -> Self {
        self.beta = beta;
        self
    }

    /// Checks every range constraint of `lemma` except those on `β`.
    pub fn validate_shape(&self, lemma: LemmaId) -> Result<(), CatalogError> {
        let issues = self.shape_issues(lemma);
        if issues.is_empty() {
            Ok(())
        } else {
            Err(CatalogError::InvalidParameters { lemma, issues })
        }
    }

    /// Checks every range constraint of `lemma`, including `β`.
    pub fn validate(&self, lemma: LemmaId) -> Result<(), CatalogError> {
        let mut issues = self.shape_issues(lemma);
        let beta = self.beta;
        if !beta.is_finite() {
            issues.push(format!("beta = {beta} is not finite"));
        } else {
            match lemma {
                LemmaId::L5Sum
                | LemmaId::L6SumOverP
                | LemmaId::L7SumOverP2
                | LemmaId::L8SumJanowski
                    if beta <= 0.0 =>
                {
                    issues.push(format!("beta = {beta} must be > 0"))
                }
                LemmaId::L9De | LemmaId::L10DeOverP | LemmaId::L11DeOverP2 if beta == 0.0 => {
                    issues.push("beta must be nonzero".to_string())
                }
                _ => {}
            }
        }
        if issues.is_empty() {
            Ok(())
        } else {
            Err(CatalogError::InvalidParameters { lemma, issues })
        }
    }

    fn shape_issues(&self, lemma: LemmaId) -> Vec<String> {
        let mut issues = Vec::new();
        let in_unit = |x: f64| x.is_finite() && (-1.0..=1.0).contains(&x);
        if lemma.uses_ab() {
            let (a, b) = (self.a, self.b);
            if !in_unit(a) || !in_unit(b) || b >= a {
                issues.push(format!("need -1 <= B < A <= 1, got A = {a}, B = {b}"));
            } else if lemma == LemmaId::L1KFamily && b <= -1.0 {
                issues.push(format!("L1 needs -1 < B strictly, got B = {b}"));
            }
        }
        if lemma.uses_de() {
            let (d, e) = (self.d, self.e);
            if !in_unit(d) || !in_unit(e) || e >= d {
                issues.push(format!("need -1 <= E < D <= 1, got D = {d}, E = {e}"));
            }
        }
        if lemma.uses_k() {
            let k = self.k;
            let open = crate::tolerance::Tolerances::default().exponent_open;
            if !k.is_finite() || k <= -1.0 + open || k > 3.0 {
                issues.push(format!("need -1 < k <= 3, got k = {k}"));
            }
        }
        issues
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status")]
pub enum ThresholdStatus {
    Feasible { beta_star: f64 },
    AlwaysFeasible,
    Infeasible,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdResult {
    pub status: ThresholdStatus,
    pub binding_constraint: String,
}

impl ThresholdResult {
    pub fn beta_star(&self) -> Option<f64> {
        match self.status {
            ThresholdStatus::Feasible { beta_star } => Some(beta_star),
            _ => None,
        }
    }
}

/// `slope·β − |offset − drift·β| ≥ rhs`, nondecreasing in `β` when
/// `slope ≥ |drift|`. Every hypothesis in the catalog except the second
/// condition of L8 has this form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct AbsLinear {
    pub slope: f64,
    pub offset: f64,
    pub drift: f64,
    pub rhs: f64,
}

impl AbsLinear {
    pub(crate) fn lhs(&self, beta: f64) -> f64 {
        self.slope * beta - (self.offset - self.drift * beta).abs()
    }

    pub(crate) fn holds(&self, beta: f64) -> bool {
        self.lhs(beta) >= self.rhs
    }

    /// Smallest `β > 0` satisfying the inequality, solved segment by segment.
    pub(crate) fn min_beta(&self) -> Option<f64> {
        let mut breaks = vec![0.0];
        if self.drift != 0.0 {
            let kink = self.offset / self.drift;
            if kink > 0.0 && kink.is_finite() {
                breaks.push(kink);
            }
        }
        for (i, &lo) in breaks.iter().enumerate() {
            let hi = breaks.get(i + 1).copied();
            let f_lo = self.lhs(lo);
            if f_lo >= self.rhs && lo > 0.0 {
                return Some(lo);
            }
            let probe = hi.unwrap_or(lo + 1.0);
            let slope = (self.lhs(probe) - f_lo) / (probe - lo);
            if slope > 0.0 {
                let x = lo + (self.rhs - f_lo) / slope;
                if hi.map_or(true, |h| x <= h) {
                    return Some(nudge_until(x, |b| self.holds(b)));
                }
            }
        }
        None
    }
}

/// Moves `x` up by a few ulps until `pred` holds, absorbing rounding in the
/// closed-form solve.
fn nudge_until(mut x: f64, pred: impl Fn(f64) -> bool) -> f64 {
    for _ in 0..64 {
        if pred(x) {
            return x;
        }
        x += x.abs().max(f64::MIN_POSITIVE) * f64::EPSILON;
    }
    x
}

/// The lemma's hypothesis on `β` as a function of `(A, B, D, E, k)`.
pub(crate) fn hypothesis(lemma: LemmaId, p: &LemmaParams) -> Option<AbsLinear> {
    let (a, b, d, e) = (p.a, p.b, p.d, p.e);
    let ab = a - b;
    let de = d - e;
    let lin = |slope, rhs| AbsLinear {
        slope,
        offset: 0.0,
        drift: 0.0,
        rhs,
    };
    Some(match lemma {
        // |β| ≥ 2^{(k+3)/2}(A−B) + |Bβ|
        LemmaId::L1KFamily => AbsLinear {
            slope: 1.0,
            offset: 0.0,
            drift: b,
            rhs: 2f64.powf((p.k + 3.0) / 2.0) * ab,
        },
        LemmaId::L2Full => lin(ab, SQRT_2 * (1.0 + b.abs()).powi(2) + (1.0 - b).powi(2)),
        LemmaId::L3OverP => lin(ab, (SQRT_2 - 1.0) * (1.0 + a.abs()) * (1.0 + b.abs())),
        LemmaId::L4OverP2 => lin(
            ab,
            (SQRT_2 - 1.0) * (1.0 + a.abs()).powi(2) + (1.0 - a).powi(2),
        ),
        LemmaId::L8SumJanowski => lin(
            ab,
            SQRT_2 * (1.0 + a.abs()) * (1.0 + b.abs()) + a.abs().powi(2) - 1.0,
        ),
        LemmaId::L9De => AbsLinear {
            slope: ab,
            offset: 2.0 * b * de,
            drift: e * ab,
            rhs: de * (1.0 + b * b),
        },
        LemmaId::L10DeOverP => AbsLinear {
            slope: ab,
            offset: (a + b) * de,
            drift: e * ab,
            rhs: de * (1.0 + (a * b).abs()),
        },
        LemmaId::L11DeOverP2 => AbsLinear {
            slope: ab,
            offset: 2.0 * a * de,
            drift: e * ab,
            rhs: de * (1.0 + a * a),
        },
        LemmaId::L5Sum | LemmaId::L6SumOverP | LemmaId::L7SumOverP2 => return None,
    })
}

/// `max{0, (A−B)/((1+|A|)(1+|B|)) − (1−|B|)/(1+|B|)}`; L8 needs `1/β` at least this.
pub(crate) fn l8_second_condition(p: &LemmaParams) -> f64 {
    let (a, b) = (p.a, p.b);
    let bound = (a - b) / ((1.0 + a.abs()) * (1.0 + b.abs())) - (1.0 - b.abs()) / (1.0 + b.abs());
    bound.max(0.0)
}

/// Minimal `β > 0` satisfying the lemma's hypothesis, resolved exactly.
pub fn closed_form_threshold(
    lemma: LemmaId,
    params: &LemmaParams,
) -> Result<ThresholdResult, CatalogError> {
    params.validate_shape(lemma)?;
    let Some(ineq) = hypothesis(lemma, params) else {
        return Ok(ThresholdResult {
            status: ThresholdStatus::AlwaysFeasible,
            binding_constraint: "beta > 0".to_string(),
        });
    };
    let binding = match lemma {
        LemmaId::L1KFamily => "|beta| >= 2^((k+3)/2)(A-B) + |B beta|",
        LemmaId::L2Full => "(A-B) beta >= sqrt2 (1+|B|)^2 + (1-B)^2",
        LemmaId::L3OverP => "(A-B) beta >= (sqrt2-1)(1+|A|)(1+|B|)",
        LemmaId::L4OverP2 => "(A-B) beta >= (sqrt2-1)(1+|A|)^2 + (1-A)^2",
        LemmaId::L8SumJanowski => "(A-B) beta >= sqrt2 (1+|A|)(1+|B|) + |A|^2 - 1",
        LemmaId::L9De => "beta(A-B) >= (D-E)(1+B^2) + |2B(D-E) - E beta(A-B)|",
        LemmaId::L10DeOverP => "beta(A-B) >= (D-E)(1+|AB|) + |(A+B)(D-E) - E beta(A-B)|",
        LemmaId::L11DeOverP2 => "|beta|(A-B) >= (D-E)(1+A^2) + |2A(D-E) - E beta(A-B)|",
        _ => unreachable!("sum lemmas returned above"),
    };
    let Some(beta_star) = ineq.min_beta() else {
        return Ok(ThresholdResult {
            status: ThresholdStatus::Infeasible,
            binding_constraint: format!("{binding} has no solution beta > 0"),
        });
    };
    if lemma == LemmaId::L8SumJanowski {
        let cap = l8_second_condition(params);
        if cap > 0.0 && 1.0 / beta_star < cap {
            return Ok(ThresholdResult {
                status: ThresholdStatus::Infeasible,
                binding_constraint: format!(
                    "{binding} needs beta >= {beta_star:.9}, but 1/beta >= {cap:.9} caps beta at {:.9}",
                    1.0 / cap
                ),
            });
        }
    }
    let beta_star = nudge_until(beta_star, |b| feasibility_check(lemma, &params.with_beta(b)));
    Ok(ThresholdResult {
        status: ThresholdStatus::Feasible { beta_star },
        binding_constraint: binding.to_string(),
    })
}

/// Whether the lemma's stated hypothesis holds verbatim for `params.beta`.
pub fn feasibility_check(lemma: LemmaId, params: &LemmaParams) -> bool {
    if params.validate(lemma).is_err() {
        return false;
    }
    let (a, b, d, e, beta) = (params.a, params.b, params.d, params.e, params.beta);
    match lemma {
        LemmaId::L1KFamily => {
            beta.abs() >= 2f64.powf((params.k + 3.0) / 2.0) * (a - b) + (b * beta).abs()
        }
        LemmaId::L2Full => (a - b) * beta >= SQRT_2 * (1.0 + b.abs()).powi(2) + (1.0 - b).powi(2),
        LemmaId::L3OverP => (a - b) * beta >= (SQRT_2 - 1.0) * (1.0 + a.abs()) * (1.0 + b.abs()),
        LemmaId::L4OverP2 => {
            (a - b) * beta >= (SQRT_2 - 1.0) * (1.0 + a.abs()).powi(2) + (1.0 - a).powi(2)
        }
        LemmaId::L5Sum | LemmaId::L6SumOverP | LemmaId::L7SumOverP2 => beta > 0.0,
        LemmaId::L8SumJanowski => {
            (a - b) * beta >= SQRT_2 * (1.0 + a.abs()) * (1.0 + b.abs()) + a.abs().powi(2) - 1.0
                && 1.0 / beta >= l8_second_condition(params)
        }
        LemmaId::L9De => {
            beta * (a - b)
                >= (d - e) * (1.0 + b * b) + (2.0 * b * (d - e) - e * beta * (a - b)).abs()
        }
        LemmaId::L10DeOverP => {
            beta * (a - b)
                >= (d - e) * (1.0 + (a * b).abs())
                    + ((a + b) * (d - e) - e * beta * (a - b)).abs()
        }
        LemmaId::L11DeOverP2 => {
            beta.abs() * (a - b)
                >= (d - e) * (1.0 + a * a) + (2.0 * a * (d - e) - e * beta * (a - b)).abs()
        }
    }
}

/// Seeded shape-valid parameters: `A, B, D, E` uniform on `[−1, 1]` with
/// `A − B, D − E > 10⁻³`, `k` uniform on `(−0.99, 3]`, `β = 1`.
pub fn random_params<R: Rng + ?Sized>(lemma: LemmaId, rng: &mut R) -> LemmaParams {
    loop {
        let p = LemmaParams {
            a: rng.gen_range(-1.0..=1.0),
            b: rng.gen_range(-1.0..=1.0),
            d: rng.gen_range(-1.0..=1.0),
            e: rng.gen_range(-1.0..=1.0),
            k: rng.gen_range(-0.99..=3.0),
            beta: 1.0,
        };
        let spread_ok = (!lemma.uses_ab() || p.a - p.b > 1e-3) && (!lemma.uses_de() || p.d - p.e > 1e-3);
        if spread_ok && p.validate_shape(lemma).is_ok() {
            return p;
        }
    }
}

/// Seeded parameters with a finite closed-form threshold, returned with
/// `β = β*`. `None` for lemmas whose hypothesis never binds.
pub fn random_feasible<R: Rng + ?Sized>(lemma: LemmaId, rng: &mut R) -> Option<LemmaParams> {
    if !lemma.has_margin_criterion() {
        return None;
    }
    loop {
        let p = random_params(lemma, rng);
        if let Ok(ThresholdResult {
            status: ThresholdStatus::Feasible { beta_star },
            ..
        }) = closed_form_threshold(lemma, &p)
        {
            return Some(p.with_beta(beta_star));
        }
    }
}

/// Differential form of the premise expression.
pub fn form(lemma: LemmaId, params: &LemmaParams) -> Form {
    match lemma {
        LemmaId::L1KFamily => Form::Derivative {
            exponent: params.k,
        },
        LemmaId::L2Full | LemmaId::L9De => Form::Derivative { exponent: 0.0 },
        LemmaId::L3OverP | LemmaId::L10DeOverP => Form::Derivative { exponent: 1.0 },
        LemmaId::L4OverP2 | LemmaId::L11DeOverP2 => Form::Derivative { exponent: 2.0 },
        LemmaId::L5Sum => Form::Sum { power: 0 },
        LemmaId::L6SumOverP | LemmaId::L8SumJanowski => Form::Sum { power: 1 },
        LemmaId::L7SumOverP2 => Form::Sum { power: 2 },
    }
}

/// Region the premise expression is subordinate to (image of `Φ`).
pub fn premise_region(lemma: LemmaId, params: &LemmaParams) -> TargetRegion {
    match lemma {
        LemmaId::L1KFamily => TargetRegion::Janowski {
            a: params.a,
            b: params.b,
        },
        LemmaId::L9De | LemmaId::L10DeOverP | LemmaId::L11DeOverP2 => TargetRegion::Janowski {
            a: params.d,
            b: params.e,
        },
        _ => TargetRegion::SqrtLemniscate,
    }
}

/// Region `q(𝔻)` the conclusion places `p` in.
pub fn conclusion_region(lemma: LemmaId, params: &LemmaParams) -> TargetRegion {
    match lemma {
        LemmaId::L1KFamily | LemmaId::L5Sum | LemmaId::L6SumOverP | LemmaId::L7SumOverP2 => {
            TargetRegion::SqrtLemniscate
        }
        _ => TargetRegion::Janowski {
            a: params.a,
            b: params.b,
        },
    }
}

fn guard(lemma: LemmaId, z: Complex64, den: Complex64) -> Result<Complex64, CatalogError> {
    if den.norm() < SINGULAR_EPS || !den.re.is_finite() || !den.im.is_finite() {
        Err(CatalogError::SingularPoint { lemma, z })
    } else {
        Ok(den)
    }
}

/// `Q(z) = z q′(z) φ(q(z))`, per lemma in closed form.
pub fn dominant_q_eval(
    lemma: LemmaId,
    params: &LemmaParams,
    z: Complex64,
) -> Result<Complex64, CatalogError> {
    let (a, b, beta) = (params.a, params.b, params.beta);
    let one_plus = |c: f64| guard(lemma, z, 1.0 + c * z);
    let q = match lemma {
        LemmaId::L1KFamily => {
            let den = guard(lemma, z, 1.0 + z)?.powf((params.k + 1.0) / 2.0);
            beta * z / (2.0 * guard(lemma, z, den)?)
        }
        LemmaId::L2Full | LemmaId::L9De => beta * (a - b) * z / one_plus(b)?.powi(2),
        LemmaId::L3OverP | LemmaId::L10DeOverP | LemmaId::L8SumJanowski => {
            beta * (a - b) * z / (one_plus(a)? * one_plus(b)?)
        }
        LemmaId::L4OverP2 | LemmaId::L11DeOverP2 => beta * (a - b) * z / one_plus(a)?.powi(2),
        LemmaId::L5Sum => beta * z / (2.0 * guard(lemma, z, (1.0 + z).sqrt())?),
        LemmaId::L6SumOverP => beta * z / (2.0 * one_plus(1.0)?),
        LemmaId::L7SumOverP2 => {
            beta * z / (2.0 * guard(lemma, z, one_plus(1.0)?.powf(1.5))?)
        }
    };
    Ok(q)
}

/// Dominant `h(z)`: `1 + Q` for derivative forms, `q + Q` for sum forms.
pub fn premise_h_eval(
    lemma: LemmaId,
    params: &LemmaParams,
    z: Complex64,
) -> Result<Complex64, CatalogError> {
    let q_big = dominant_q_eval(lemma, params, z)?;
    match form(lemma, params) {
        Form::Derivative { .. } => Ok(1.0 + q_big),
        Form::Sum { .. } => Ok(conclusion_q(lemma, params, z)? + q_big),
    }
}

/// Conclusion function `q(z)`.
pub fn conclusion_q(
    lemma: LemmaId,
    params: &LemmaParams,
    z: Complex64,
) -> Result<Complex64, CatalogError> {
    conclusion_region(lemma, params)
        .eval(z)
        .map_err(|_| CatalogError::SingularPoint { lemma, z })
}

/// `zQ′(z)/Q(z)` in closed form.
pub fn z_q_prime_over_q(
    lemma: LemmaId,
    params: &LemmaParams,
    z: Complex64,
) -> Result<Complex64, CatalogError> {
    let (a, b) = (params.a, params.b);
    let one_plus = |c: f64| guard(lemma, z, 1.0 + c * z);
    let v = match lemma {
        LemmaId::L1KFamily => 1.0 - (params.k + 1.0) / 2.0 * z / one_plus(1.0)?,
        LemmaId::L2Full | LemmaId::L9De => (1.0 - b * z) / one_plus(b)?,
        LemmaId::L3OverP | LemmaId::L10DeOverP | LemmaId::L8SumJanowski => {
            (1.0 - a * b * z * z) / (one_plus(a)? * one_plus(b)?)
        }
        LemmaId::L4OverP2 | LemmaId::L11DeOverP2 => (1.0 - a * z) / one_plus(a)?,
        LemmaId::L5Sum => 1.0 - z / (2.0 * one_plus(1.0)?),
        LemmaId::L6SumOverP => 1.0 - z / one_plus(1.0)?,
        LemmaId::L7SumOverP2 => 1.0 - 1.5 * z / one_plus(1.0)?,
    };
    Ok(v)
}

/// `φ(q(z)) = β / q(z)^n`, with `n` the exponent of the premise form.
pub fn phi_of_q(
    lemma: LemmaId,
    params: &LemmaParams,
    z: Complex64,
) -> Result<Complex64, CatalogError> {
    let q = conclusion_q(lemma, params, z)?;
    let n = form(lemma, params).exponent();
    let qn = guard(lemma, z, q.powf(n))?;
    Ok(params.beta / qn)
}

/// `zh′(z)/Q(z)` in closed form. For `h = 1 + Q` this is `zQ′/Q`; for
/// `h = q + Q` it adds `zq′/Q = 1/φ(q)`.
pub fn z_h_prime_over_q(
    lemma: LemmaId,
    params: &LemmaParams,
    z: Complex64,
) -> Result<Complex64, CatalogError> {
    let base = z_q_prime_over_q(lemma, params, z)?;
    match form(lemma, params) {
        Form::Derivative { .. } => Ok(base),
        Form::Sum { .. } => {
            let phi = guard(lemma, z, phi_of_q(lemma, params, z)?)?;
            Ok(base + 1.0 / phi)
        }
    }
}

/// Angles `t ∈ (−π, π]` where `h`, `Q` or their log-derivatives are singular
/// on the unit circle.
pub fn singular_angles(lemma: LemmaId, params: &LemmaParams) -> Vec<f64> {
    let mut angles = Vec::new();
    // z = −1/c lies on the circle when |c| = 1
    let mut factor = |c: f64| {
        if (c.abs() - 1.0).abs() <= UNIT_EPS {
            angles.push(if c > 0.0 { PI } else { 0.0 });
        }
    };
    match lemma {
        LemmaId::L1KFamily | LemmaId::L5Sum | LemmaId::L6SumOverP | LemmaId::L7SumOverP2 => {
            factor(1.0)
        }
        LemmaId::L2Full | LemmaId::L9De => factor(params.b),
        LemmaId::L3OverP | LemmaId::L10DeOverP | LemmaId::L8SumJanowski => {
            factor(params.a);
            factor(params.b);
        }
        LemmaId::L4OverP2 | LemmaId::L11DeOverP2 => factor(params.a),
    }
    angles.sort_by(f64::total_cmp);
    angles.dedup();
    angles
}

/// The lower bound `g(t) = |β| / (2(A−B)(2cos(t/2))^{(k+1)/2} + |Bβ|)` for
/// the L1 margin on the boundary.
pub fn l1_lower_bound(params: &LemmaParams, t: f64) -> f64 {
    let beta = params.beta.abs();
    let c = (2.0 * (t / 2.0).cos()).max(0.0);
    beta / (2.0 * (params.a - params.b) * c.powf((params.k + 1.0) / 2.0) + (params.b * beta).abs())
}
