//! Argument-principle zero counting on circles.
//!
//! The winding number of `f(r e^{it})` around the origin equals the number of
//! zeros minus poles of `f` inside `|z| < r`. Phase is unwrapped with
//! adaptive bisection so steep phase changes near boundary singularities are
//! resolved rather than aliased.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use thiserror::Error;

/// Largest phase increment accepted between neighbouring samples.
const MAX_STEP: f64 = PI / 8.0;
/// Deepest bisection of any initial segment.
const MAX_DEPTH: u32 = 48;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WindingError {
    #[error("function vanishes or is undefined on the contour at t = {0}")]
    DegenerateContour(f64),
    #[error("phase could not be resolved near t = {0}")]
    Unresolved(f64),
}

/// Winding number of `f` along `|z| = radius`, sampled on `initial` uniform
/// segments and refined where the phase moves quickly.
pub fn winding_number<F>(f: F, radius: f64, initial: usize) -> Result<i64, WindingError>
where
    F: Fn(Complex64) -> Option<Complex64>,
{
    let eval = |t: f64| -> Result<Complex64, WindingError> {
        match f(Complex64::from_polar(radius, t)) {
            Some(v) if v.norm() > 0.0 && v.re.is_finite() && v.im.is_finite() => Ok(v),
            _ => Err(WindingError::DegenerateContour(t)),
        }
    };
    let n = initial.max(8);
    let mut total = 0.0;
    let mut t0 = -PI;
    let mut v0 = eval(t0)?;
    for j in 1..=n {
        let t1 = -PI + TAU * j as f64 / n as f64;
        let v1 = eval(t1)?;
        total += phase_change(&eval, t0, v0, t1, v1, 0)?;
        t0 = t1;
        v0 = v1;
    }
    Ok((total / TAU).round() as i64)
}

fn phase_change<E>(
    eval: &E,
    t0: f64,
    v0: Complex64,
    t1: f64,
    v1: Complex64,
    depth: u32,
) -> Result<f64, WindingError>
where
    E: Fn(f64) -> Result<Complex64, WindingError>,
{
    let step = (v1 / v0).arg();
    if step.abs() <= MAX_STEP {
        return Ok(step);
    }
    if depth >= MAX_DEPTH {
        return Err(WindingError::Unresolved(t0));
    }
    let tm = 0.5 * (t0 + t1);
    let vm = eval(tm)?;
    Ok(phase_change(eval, t0, v0, tm, vm, depth + 1)?
        + phase_change(eval, tm, vm, t1, v1, depth + 1)?)
}
