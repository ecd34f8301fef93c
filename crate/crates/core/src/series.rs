//! Truncated Taylor series with complex coefficients.
//!
//! Everything here is computed by coefficient recursion in `O(N²)`; no
//! matrix inversion and no FFT. A series of order `N` stores `N + 1`
//! coefficients `c₀..c_N`, and every binary operation truncates to the
//! smaller order of its operands.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Constant terms closer to zero than this cannot be divided by.
const PIVOT_FLOOR: f64 = 1e-14;
/// Normalization checks on constant terms (`c₀ = 1`, `c₀ = 0`).
const CONSTANT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SeriesError {
    #[error("division by a series whose constant term {0} vanishes")]
    DivisionByZeroConstantTerm(Complex64),
    #[error("expected constant term 1, found {0}")]
    ConstantTermNotOne(Complex64),
    #[error("expected constant term 0, found {0}")]
    ConstantTermNotZero(Complex64),
    #[error("inner series of a composition must vanish at 0, found {0}")]
    InnerConstantTermNotZero(Complex64),
    #[error("truncation order must be positive")]
    ZeroOrder,
}

pub type Result<T> = std::result::Result<T, SeriesError>;

/// Transcendental functions available on series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transcendental {
    Sqrt,
    Log,
    Exp,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerSeries {
    coeffs: Vec<Complex64>,
}

impl PowerSeries {
    /// Builds a series of order `order` from leading coefficients, padding
    /// with zeros or truncating as needed.
    pub fn from_coeffs<I>(coeffs: I, order: usize) -> Result<Self>
    where
        I: IntoIterator<Item = Complex64>,
    {
        if order == 0 {
            return Err(SeriesError::ZeroOrder);
        }
        let mut c: Vec<Complex64> = coeffs.into_iter().take(order + 1).collect();
        c.resize(order + 1, Complex64::new(0.0, 0.0));
        Ok(Self { coeffs: c })
    }

    /// Real-coefficient convenience constructor.
    pub fn from_real(coeffs: &[f64], order: usize) -> Result<Self> {
        Self::from_coeffs(coeffs.iter().map(|&x| Complex64::new(x, 0.0)), order)
    }

    pub fn zero(order: usize) -> Result<Self> {
        Self::from_coeffs(std::iter::empty(), order)
    }

    pub fn constant(value: Complex64, order: usize) -> Result<Self> {
        Self::from_coeffs([value], order)
    }

    pub fn one(order: usize) -> Result<Self> {
        Self::constant(Complex64::new(1.0, 0.0), order)
    }

    /// The identity series `z`.
    pub fn identity(order: usize) -> Result<Self> {
        Self::from_real(&[0.0, 1.0], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Complex64 {
        self.coeffs.get(n).copied().unwrap_or_default()
    }

    pub fn constant_term(&self) -> Complex64 {
        self.coeffs[0]
    }

    /// Copy truncated (or zero-extended) to another order.
    pub fn with_order(&self, order: usize) -> Result<Self> {
        Self::from_coeffs(self.coeffs.iter().copied(), order)
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|&c| c * factor).collect(),
        }
    }

    /// Largest coefficient modulus.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Largest coefficientwise distance to `other` over the common order.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    /// Cauchy product truncated at the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let coeffs = (0..=n)
            .map(|k| (0..=k).map(|j| self.coeffs[j] * other.coeffs[k - j]).sum())
            .collect();
        Self { coeffs }
    }

    /// Quotient `self / divisor` by forward substitution.
    pub fn div(&self, divisor: &Self) -> Result<Self> {
        let b0 = divisor.coeffs[0];
        if b0.norm() < PIVOT_FLOOR {
            return Err(SeriesError::DivisionByZeroConstantTerm(b0));
        }
        let n = self.order().min(divisor.order());
        let mut d = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let acc: Complex64 = (1..=k).map(|j| divisor.coeffs[j] * d[k - j]).sum();
            d.push((self.coeffs[k] - acc) / b0);
        }
        Ok(Self { coeffs: d })
    }

    /// `self^exponent = exp(exponent · log self)` for a series with `c₀ = 1`.
    ///
    /// Uses the J.C.P. Miller recurrence
    /// `n sₙ = Σ_{j=1}^{n} ((k+1) j − n) pⱼ s_{n−j}`.
    pub fn powf(&self, exponent: f64) -> Result<Self> {
        self.require_unit_constant()?;
        let mut s = PowerStream::new(exponent);
        let coeffs = (0..=self.order()).map(|n| s.push(&self.coeffs, n)).collect();
        Ok(Self { coeffs })
    }

    pub fn sqrt(&self) -> Result<Self> {
        self.powf(0.5)
    }

    /// Principal logarithm of a series with `c₀ = 1`.
    pub fn ln(&self) -> Result<Self> {
        self.require_unit_constant()?;
        let p = &self.coeffs;
        let mut l = vec![Complex64::new(0.0, 0.0); p.len()];
        for n in 1..p.len() {
            let acc: Complex64 = (1..n).map(|j| l[j] * p[n - j] * j as f64).sum();
            l[n] = (p[n] * n as f64 - acc) / n as f64;
        }
        Ok(Self { coeffs: l })
    }

    /// Exponential of a series with `c₀ = 0`.
    pub fn exp(&self) -> Result<Self> {
        let g0 = self.coeffs[0];
        if g0.norm() > CONSTANT_TOL {
            return Err(SeriesError::ConstantTermNotZero(g0));
        }
        let g = &self.coeffs;
        let mut e = vec![Complex64::new(0.0, 0.0); g.len()];
        e[0] = Complex64::new(1.0, 0.0);
        for n in 1..g.len() {
            let acc: Complex64 = (1..=n).map(|j| g[j] * e[n - j] * j as f64).sum();
            e[n] = acc / n as f64;
        }
        Ok(Self { coeffs: e })
    }

    pub fn transcendental(&self, f: Transcendental) -> Result<Self> {
        match f {
            Transcendental::Sqrt => self.sqrt(),
            Transcendental::Log => self.ln(),
            Transcendental::Exp => self.exp(),
        }
    }

    /// `z p'(z)`: maps `cₙ ↦ n cₙ`.
    pub fn zderiv(&self) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, &c)| c * n as f64)
                .collect(),
        }
    }

    /// Antiderivative vanishing at 0, truncated to the same order.
    pub fn integrate0(&self) -> Self {
        let n = self.order();
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
        for k in 0..n {
            coeffs[k + 1] = self.coeffs[k] / (k + 1) as f64;
        }
        Self { coeffs }
    }

    /// Taylor coefficients of `self ∘ inner`, by Horner's scheme in the ring
    /// of truncated series.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        let w0 = inner.coeffs[0];
        if w0.norm() > CONSTANT_TOL {
            return Err(SeriesError::InnerConstantTermNotZero(w0));
        }
        let n = self.order().min(inner.order());
        let mut acc = Self::constant(self.coeffs[n], n)?;
        for k in (0..n).rev() {
            acc = acc.mul(inner);
            acc.coeffs[0] += self.coeffs[k];
        }
        Ok(acc)
    }

    /// Horner evaluation of the truncated polynomial.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    fn require_unit_constant(&self) -> Result<()> {
        let c0 = self.coeffs[0];
        if (c0 - 1.0).norm() > CONSTANT_TOL {
            return Err(SeriesError::ConstantTermNotOne(c0));
        }
        Ok(())
    }
}

/// Online coefficients of `p^k` for `p₀ = 1`, fed one coefficient of `p` at
/// a time. `push(p, n)` needs `p[0..=n]` and returns `(p^k)ₙ`.
#[derive(Debug, Clone)]
pub(crate) struct PowerStream {
    exponent: f64,
    out: Vec<Complex64>,
}

impl PowerStream {
    pub(crate) fn new(exponent: f64) -> Self {
        Self {
            exponent,
            out: Vec::new(),
        }
    }

    /// Coefficients produced so far.
    pub(crate) fn coeffs(&self) -> &[Complex64] {
        &self.out
    }

    pub(crate) fn push(&mut self, p: &[Complex64], n: usize) -> Complex64 {
        debug_assert_eq!(self.out.len(), n);
        let value = if n == 0 {
            Complex64::new(1.0, 0.0)
        } else {
            let k1 = self.exponent + 1.0;
            let nf = n as f64;
            let acc: Complex64 = (1..=n)
                .map(|j| p[j] * self.out[n - j] * (k1 * j as f64 - nf))
                .sum();
            acc / nf
        };
        self.out.push(value);
        value
    }
}

impl Add for &PowerSeries {
    type Output = PowerSeries;
    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        PowerSeries {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;
    fn sub(self, rhs: &PowerSeries) -> PowerSeries {
        PowerSeries {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &PowerSeries {
    type Output = PowerSeries;
    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        PowerSeries::mul(self, rhs)
    }
}

impl Neg for &PowerSeries {
    type Output = PowerSeries;
    fn neg(self) -> PowerSeries {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn assert_coeffs(s: &PowerSeries, expected: &[f64], tol: f64) {
        for (n, &e) in expected.iter().enumerate() {
            assert!(
                (s.coeff(n) - c(e)).norm() <= tol,
                "coefficient {n}: got {}, expected {e}",
                s.coeff(n)
            );
        }
    }

    #[test]
    fn product_of_conjugate_binomials() {
        let a = PowerSeries::from_real(&[1.0, 1.0], 8).unwrap();
        let b = PowerSeries::from_real(&[1.0, -1.0], 8).unwrap();
        assert_coeffs(&(&a * &b), &[1.0, 0.0, -1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0], 0.0);
    }

    #[test]
    fn reciprocal_is_geometric() {
        let one = PowerSeries::one(10).unwrap();
        let b = PowerSeries::from_real(&[1.0, 1.0], 10).unwrap();
        let q = one.div(&b).unwrap();
        for n in 0..=10 {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert_eq!(q.coeff(n), c(sign));
        }
    }

    #[test]
    fn janowski_with_trivial_denominator() {
        let num = PowerSeries::from_real(&[1.0, 1.0], 6).unwrap();
        let den = PowerSeries::from_real(&[1.0, 0.0], 6).unwrap();
        assert_coeffs(&num.div(&den).unwrap(), &[1.0, 1.0, 0.0, 0.0], 0.0);
    }

    #[test]
    fn division_rejects_vanishing_pivot() {
        let a = PowerSeries::one(4).unwrap();
        let b = PowerSeries::from_real(&[1e-15, 1.0], 4).unwrap();
        assert!(matches!(
            a.div(&b),
            Err(SeriesError::DivisionByZeroConstantTerm(_))
        ));
    }

    #[test]
    fn binomial_powers() {
        let p = PowerSeries::from_real(&[1.0, 1.0], 6).unwrap();
        assert_coeffs(&p.powf(0.5).unwrap(), &[1.0, 0.5, -0.125, 0.0625], 1e-15);
        assert_coeffs(&p.powf(2.0).unwrap(), &[1.0, 2.0, 1.0, 0.0, 0.0], 1e-15);
        assert_coeffs(&p.powf(-1.0).unwrap(), &[1.0, -1.0, 1.0, -1.0, 1.0], 1e-15);
    }

    #[test]
    fn power_requires_unit_constant() {
        let p = PowerSeries::from_real(&[2.0, 1.0], 4).unwrap();
        assert!(matches!(p.powf(0.5), Err(SeriesError::ConstantTermNotOne(_))));
        assert!(matches!(p.ln(), Err(SeriesError::ConstantTermNotOne(_))));
        assert!(matches!(p.exp(), Err(SeriesError::ConstantTermNotZero(_))));
    }

    #[test]
    fn mercator_and_exponential_series() {
        let p = PowerSeries::from_real(&[1.0, 1.0], 6).unwrap();
        assert_coeffs(&p.ln().unwrap(), &[0.0, 1.0, -0.5, 1.0 / 3.0, -0.25], 1e-15);
        let z = PowerSeries::identity(6).unwrap();
        assert_coeffs(
            &z.exp().unwrap(),
            &[1.0, 1.0, 0.5, 1.0 / 6.0, 1.0 / 24.0, 1.0 / 120.0],
            1e-15,
        );
    }

    #[test]
    fn calculus_examples() {
        let p = PowerSeries::from_real(&[1.0, 1.0, 1.0], 4).unwrap();
        assert_coeffs(&p.zderiv(), &[0.0, 1.0, 2.0, 0.0], 0.0);
        let one = PowerSeries::one(4).unwrap();
        assert_coeffs(&one.integrate0(), &[0.0, 1.0, 0.0], 0.0);
        // term-wise derivative of the binomial series of (1+z)^{1/2}
        let root = PowerSeries::from_real(&[1.0, 1.0], 6).unwrap().sqrt().unwrap();
        assert_coeffs(&root.zderiv(), &[0.0, 0.5, -0.25, 3.0 / 16.0], 1e-15);
    }

    #[test]
    fn composition_examples() {
        let p = PowerSeries::from_real(&[1.0, 1.0], 6).unwrap();
        let z = PowerSeries::identity(6).unwrap();
        assert_eq!(p.compose(&z).unwrap(), p);
        let z2 = PowerSeries::from_real(&[0.0, 0.0, 1.0], 6).unwrap();
        assert_coeffs(&p.compose(&z2).unwrap(), &[1.0, 0.0, 1.0, 0.0], 0.0);
        // √(1+u) at u = z/2: 1 + z/4 − z²/32 + z³/128
        let root = p.sqrt().unwrap();
        let half = PowerSeries::from_real(&[0.0, 0.5], 6).unwrap();
        assert_coeffs(
            &root.compose(&half).unwrap(),
            &[1.0, 0.25, -1.0 / 32.0, 1.0 / 128.0],
            1e-15,
        );
        assert!(matches!(
            p.compose(&p),
            Err(SeriesError::InnerConstantTermNotZero(_))
        ));
    }

    #[test]
    fn evaluation_examples() {
        let p = PowerSeries::from_real(&[1.0, 1.0], 4).unwrap();
        assert_eq!(p.eval(c(0.0)), c(1.0));
        let root = PowerSeries::from_real(&[1.0, 1.0], 64).unwrap().sqrt().unwrap();
        assert!((root.eval(c(0.21)) - c(1.1)).norm() < 1e-10);
        let geo = PowerSeries::one(64)
            .unwrap()
            .div(&PowerSeries::from_real(&[1.0, -1.0], 64).unwrap())
            .unwrap();
        // truncated tail is 2^-64 / (1 - 1/2)
        assert!((geo.eval(c(0.5)) - c(2.0)).norm() <= 2f64.powi(-63) * 2.0);
    }

    #[test]
    fn binary_ops_take_min_order() {
        let a = PowerSeries::from_real(&[1.0, 2.0], 10).unwrap();
        let b = PowerSeries::from_real(&[1.0, 3.0], 4).unwrap();
        assert_eq!((&a * &b).order(), 4);
        assert_eq!((&a + &b).order(), 4);
        assert_eq!(a.div(&b).unwrap().order(), 4);
    }

    #[test]
    fn zero_order_rejected() {
        assert_eq!(PowerSeries::one(0), Err(SeriesError::ZeroOrder));
    }
}
