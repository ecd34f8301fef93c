//! Test functions for implication trials.
//!
//! [`SchwarzFunction`]s are self-maps of the disk fixing 0. Given one, a
//! lemma's premise `Ψ(p) = Φ(w)` is an ODE for `p`; [`solve_premise_ode`]
//! solves it coefficient by coefficient, so the premise subordination holds
//! by construction and only the conclusion is left to check.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{self, CatalogError, Form, LemmaId, LemmaParams};
use crate::regions::TargetRegion;
use crate::search::{golden_section, smallest_local_minima};
use crate::series::{PowerSeries, PowerStream, SeriesError};
use crate::tolerance::Tolerances;

/// Boundary samples used to measure and certify `sup |w|`.
const SUP_SAMPLES: usize = 4096;
/// Normalized polynomials are divided by `sup |P| · SAFETY`.
const SAFETY: f64 = 1.000_000_1;
/// Random polynomial degree.
pub const DEFAULT_DEGREE: usize = 8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeneratorError {
    #[error("Schwarz function is not a contraction: {0}")]
    NotAContraction(String),
    #[error("Schwarz family parameters out of range: {0}")]
    InvalidFamily(String),
    #[error("premise recursion broke down at coefficient {index}: pivot {pivot}")]
    RecursionBreakdown { index: usize, pivot: f64 },
    #[error("order {order} insufficient: residual {residual:e}, tail {tail:e}")]
    TruncationInsufficient {
        order: usize,
        residual: f64,
        tail: f64,
    },
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family")]
pub enum SchwarzFamily {
    /// `w(z) = z^power`.
    Monomial { power: u32 },
    /// `w(z) = z (z + a)/(1 + ā z)`, `|a| < 1`.
    BlaschkeFactor { a: Complex64 },
    /// `w(z) = scale · P(z) / (sup_{|z|=1} |P| · 1.0000001)` with
    /// `P(z) = Σ coeffs[j] z^{j+1}`.
    ScaledPolynomial { coeffs: Vec<Complex64>, scale: f64 },
}

impl SchwarzFamily {
    /// Seeded polynomial with coefficients uniform in the square `[−1, 1]²`.
    pub fn random_polynomial<R: Rng + ?Sized>(rng: &mut R, degree: usize, scale: f64) -> Self {
        let coeffs = (0..degree.max(1))
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        SchwarzFamily::ScaledPolynomial { coeffs, scale }
    }

    /// Seeded Blaschke factor with `|a| < max_modulus`.
    pub fn random_blaschke<R: Rng + ?Sized>(rng: &mut R, max_modulus: f64) -> Self {
        let r = max_modulus * rng.gen::<f64>().sqrt();
        let t = rng.gen_range(-PI..PI);
        SchwarzFamily::BlaschkeFactor {
            a: Complex64::from_polar(r, t),
        }
    }

    /// Campaign draw: equal odds of `z` or `z²`, a Blaschke factor with
    /// `|a| < 0.95`, and a degree-8 polynomial scaled into `[0.5, 1]`.
    pub fn random_mixture<R: Rng + ?Sized>(rng: &mut R) -> Self {
        match rng.gen_range(0..3) {
            0 => SchwarzFamily::Monomial {
                power: rng.gen_range(1..=2),
            },
            1 => Self::random_blaschke(rng, 0.95),
            _ => {
                let scale = rng.gen_range(0.5..=1.0);
                Self::random_polynomial(rng, DEFAULT_DEGREE, scale)
            }
        }
    }

    pub fn describe(&self) -> String {
        match self {
            SchwarzFamily::Monomial { power } => format!("z^{power}"),
            SchwarzFamily::BlaschkeFactor { a } => {
                format!("z(z+a)/(1+conj(a)z), a = {:.6}{:+.6}i", a.re, a.im)
            }
            SchwarzFamily::ScaledPolynomial { coeffs, scale } => {
                format!("scaled polynomial, degree {}, scale {scale:.6}", coeffs.len())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SchwarzFunction {
    pub family: SchwarzFamily,
    /// Multiplier applied to the raw polynomial (1 for closed-form families).
    normalizer: f64,
    #[serde(skip)]
    series: PowerSeries,
}

impl SchwarzFunction {
    pub fn series(&self) -> &PowerSeries {
        &self.series
    }

    pub fn order(&self) -> usize {
        self.series.order()
    }

    /// Same function expanded to another order.
    pub fn with_order(&self, order: usize) -> Result<Self, GeneratorError> {
        Ok(Self {
            family: self.family.clone(),
            normalizer: self.normalizer,
            series: expand(&self.family, self.normalizer, order)?,
        })
    }

    /// Closed-form value `w(z)`.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        match &self.family {
            SchwarzFamily::Monomial { power } => z.powu(*power),
            SchwarzFamily::BlaschkeFactor { a } => z * (z + a) / (1.0 + a.conj() * z),
            SchwarzFamily::ScaledPolynomial { coeffs, .. } => poly_eval(coeffs, z) * self.normalizer,
        }
    }

    /// Largest `|w(e^{it})|` over `samples` uniform boundary angles.
    pub fn sampled_sup(&self, samples: usize) -> f64 {
        (0..samples)
            .map(|j| self.eval(Complex64::from_polar(1.0, TAU * j as f64 / samples as f64)).norm())
            .fold(0.0, f64::max)
    }
}

fn poly_eval(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    // P(z) = z (c₁ + c₂ z + …)
    z * coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

fn expand(family: &SchwarzFamily, normalizer: f64, order: usize) -> Result<PowerSeries, GeneratorError> {
    let zero = Complex64::new(0.0, 0.0);
    let series = match family {
        SchwarzFamily::Monomial { power } => {
            let mut c = vec![zero; *power as usize + 1];
            c[*power as usize] = Complex64::new(1.0, 0.0);
            PowerSeries::from_coeffs(c, order)?
        }
        SchwarzFamily::BlaschkeFactor { a } => {
            let num = PowerSeries::from_coeffs([zero, *a, Complex64::new(1.0, 0.0)], order)?;
            let den = PowerSeries::from_coeffs([Complex64::new(1.0, 0.0), a.conj()], order)?;
            num.div(&den)?
        }
        SchwarzFamily::ScaledPolynomial { coeffs, .. } => PowerSeries::from_coeffs(
            std::iter::once(zero).chain(coeffs.iter().map(|&c| c * normalizer)),
            order,
        )?,
    };
    Ok(series)
}

/// `sup_{|z|=1} |P(z)|`: sampled maximum refined by golden-section search.
fn polynomial_sup(coeffs: &[Complex64], tol: &Tolerances) -> f64 {
    let ts: Vec<f64> = (0..SUP_SAMPLES)
        .map(|j| -PI + TAU * j as f64 / SUP_SAMPLES as f64)
        .collect();
    let neg: Vec<f64> = ts
        .iter()
        .map(|&t| -poly_eval(coeffs, Complex64::from_polar(1.0, t)).norm())
        .collect();
    let step = TAU / SUP_SAMPLES as f64;
    let mut best = neg.iter().copied().fold(f64::INFINITY, f64::min);
    for i in smallest_local_minima(&neg, 8, true) {
        let (_, v) = golden_section(
            |t| -poly_eval(coeffs, Complex64::from_polar(1.0, t)).norm(),
            ts[i] - step,
            ts[i] + step,
            tol.refine,
        );
        best = best.min(v);
    }
    -best
}

/// Builds a Schwarz function expanded to `order`.
pub fn make_schwarz(family: SchwarzFamily, order: usize) -> Result<SchwarzFunction, GeneratorError> {
    let tol = Tolerances::default();
    let normalizer = match &family {
        SchwarzFamily::Monomial { power } => {
            if *power == 0 {
                return Err(GeneratorError::InvalidFamily("monomial power must be >= 1".into()));
            }
            if *power as usize > order {
                return Err(GeneratorError::InvalidFamily(format!(
                    "monomial power {power} exceeds order {order}"
                )));
            }
            1.0
        }
        SchwarzFamily::BlaschkeFactor { a } => {
            if !(a.norm() < 1.0) {
                return Err(GeneratorError::InvalidFamily(format!("|a| = {} must be < 1", a.norm())));
            }
            1.0
        }
        SchwarzFamily::ScaledPolynomial { coeffs, scale } => {
            if !(*scale > 0.0 && *scale <= 1.0) {
                return Err(GeneratorError::InvalidFamily(format!("scale {scale} not in (0, 1]")));
            }
            if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
                return Err(GeneratorError::InvalidFamily("non-finite coefficient".into()));
            }
            let sup = polynomial_sup(coeffs, &tol);
            if !(sup > 0.0 && sup.is_finite()) {
                return Err(GeneratorError::NotAContraction(format!(
                    "cannot normalize polynomial with boundary sup {sup}"
                )));
            }
            scale / (sup * SAFETY)
        }
    };
    let series = expand(&family, normalizer, order)?;
    let w = SchwarzFunction {
        family,
        normalizer,
        series,
    };
    let sup = w.sampled_sup(SUP_SAMPLES);
    if sup > 1.0 + tol.coefficient {
        return Err(GeneratorError::NotAContraction(format!("sampled sup |w| = {sup}")));
    }
    Ok(w)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PremiseSolution {
    pub p: PowerSeries,
    /// Largest coefficient of `Ψ(p) − Φ(w)` up to the truncation order.
    pub residual: f64,
}

/// `Φ(w)` as a series, for the lemma's premise region.
pub fn premise_series(
    lemma: LemmaId,
    params: &LemmaParams,
    w: &PowerSeries,
) -> Result<PowerSeries, GeneratorError> {
    region_series(catalog::premise_region(lemma, params), w)
}

/// The region's map composed with `w`, as a series.
pub fn region_series(region: TargetRegion, w: &PowerSeries) -> Result<PowerSeries, GeneratorError> {
    let one = PowerSeries::one(w.order())?;
    Ok(match region {
        TargetRegion::SqrtLemniscate => (&one + w).sqrt()?,
        TargetRegion::Janowski { a, b } => {
            let num = &one + &w.scale(Complex64::new(a, 0.0));
            let den = &one + &w.scale(Complex64::new(b, 0.0));
            num.div(&den)?
        }
    })
}

/// `Ψ(p)`, the premise expression, evaluated by series arithmetic.
pub fn premise_expression(
    lemma: LemmaId,
    params: &LemmaParams,
    p: &PowerSeries,
) -> Result<PowerSeries, GeneratorError> {
    let f = catalog::form(lemma, params);
    let beta = Complex64::new(params.beta, 0.0);
    let term = p.zderiv().mul(&p.powf(-f.exponent())?).scale(beta);
    let base = match f {
        Form::Derivative { .. } => PowerSeries::one(p.order())?,
        Form::Sum { .. } => p.clone(),
    };
    Ok(&base + &term)
}

/// Solves `Ψ(p) = Φ(w)` for `p` with `p(0) = 1`, to order `order`.
///
/// For `1 + βzp′/p^k = Φ(w)` the coefficients satisfy
/// `nβ cₙ = [zⁿ] (Φ(w) − 1) p^k`, whose right side only involves
/// `c₀..c_{n−1}`. For `p + βzp′/pⁿ = Φ(w)`, `(1 + nβ) cₙ` equals
/// `[zⁿ]Φ(w)` minus lower-order terms.
pub fn solve_premise_ode(
    lemma: LemmaId,
    params: &LemmaParams,
    w: &SchwarzFunction,
    order: usize,
) -> Result<PremiseSolution, GeneratorError> {
    params.validate(lemma)?;
    let ws = if w.order() == order {
        w.series.clone()
    } else {
        expand(&w.family, w.normalizer, order)?
    };
    let phi = premise_series(lemma, params, &ws)?;
    let beta = params.beta;
    let form = catalog::form(lemma, params);
    let mut c = vec![Complex64::new(1.0, 0.0)];
    match form {
        Form::Derivative { exponent } => {
            let mut pk = PowerStream::new(exponent);
            pk.push(&c, 0);
            for n in 1..=order {
                let pivot = n as f64 * beta;
                if pivot.abs() < f64::MIN_POSITIVE {
                    return Err(GeneratorError::RecursionBreakdown { index: n, pivot });
                }
                let s = pk.coeffs();
                let acc: Complex64 = (1..=n).map(|j| phi.coeff(j) * s[n - j]).sum();
                c.push(acc / pivot);
                pk.push(&c, n);
            }
        }
        Form::Sum { power } => {
            let mut inv = PowerStream::new(-f64::from(power));
            inv.push(&c, 0);
            for n in 1..=order {
                let pivot = 1.0 + n as f64 * beta;
                if pivot.abs() < 1e-12 {
                    return Err(GeneratorError::RecursionBreakdown { index: n, pivot });
                }
                let s = inv.coeffs();
                let acc: Complex64 = (1..n).map(|j| c[j] * s[n - j] * j as f64).sum();
                c.push((phi.coeff(n) - acc * beta) / pivot);
                inv.push(&c, n);
            }
        }
    }
    let p = PowerSeries::from_coeffs(c, order)?;
    let lhs = premise_expression(lemma, params, &p)?;
    let residual = lhs.max_abs_diff(&phi);
    let residual = if p.is_finite() && residual.is_finite() {
        residual
    } else {
        f64::INFINITY
    };
    Ok(PremiseSolution { p, residual })
}

/// Solution together with the order it needed and its truncation tail at
/// the outermost check radius.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdaptiveSolution {
    pub solution: PremiseSolution,
    pub order: usize,
    pub tail: f64,
    pub certified: bool,
}

/// Doubles the order from `start` up to `cap` until the residual and the
/// tail bound at `radius` both pass. Returns the last attempt, with
/// `certified = false`, when the cap is reached first.
pub fn solve_premise_adaptive(
    lemma: LemmaId,
    params: &LemmaParams,
    w: &SchwarzFunction,
    (start, cap): (usize, usize),
    radius: f64,
    tol: &Tolerances,
) -> Result<AdaptiveSolution, GeneratorError> {
    let cap = cap.max(1);
    let mut order = start.clamp(1, cap);
    loop {
        let solution = solve_premise_ode(lemma, params, w, order)?;
        let tail = tail_bound(&solution.p, radius);
        let certified = solution.residual <= tol.residual && tail <= tol.tail;
        if certified || order >= cap {
            return Ok(AdaptiveSolution {
                solution,
                order,
                tail,
                certified,
            });
        }
        order = (order * 2).min(cap);
    }
}

/// Geometric tail estimate `max_j |c_{N−j}| r^{N−j} / (1 − r)` over the last
/// four coefficients.
pub fn tail_bound(p: &PowerSeries, radius: f64) -> f64 {
    let n = p.order();
    let lead = (0..4.min(n + 1))
        .map(|j| p.coeff(n - j).norm() * radius.powi((n - j) as i32))
        .fold(0.0, f64::max);
    lead / (1.0 - radius)
}
