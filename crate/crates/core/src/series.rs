//! Truncated complex power series.
//!
//! Every analytic object in the crate (the modular function, covering maps,
//! Schwarz functions, dilatations, test polynomials) is carried as a finite
//! prefix `c_0 + c_1 z + ... + c_N z^N` with an explicit truncation order `N`.
//! Operations are exact to the stated order: nothing is lazily extended.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use thiserror::Error;

pub type Complex = Complex64;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SeriesError {
    #[error("a series needs at least one coefficient")]
    Empty,
    #[error("coefficient {index} is not finite")]
    NonFinite { index: usize },
    #[error("inner series has nonzero constant term {0}")]
    NonzeroInnerConstant(Complex),
    #[error("constant term is zero, series has no reciprocal")]
    ZeroConstantTerm,
    #[error("64-bit overflow at degree {degree}")]
    Overflow { degree: usize },
}

/// Complex power-series prefix `c_0..c_N`.
#[derive(Clone, Debug)]
pub struct TruncatedSeries {
    coeffs: Vec<Complex>,
    label: Option<String>,
}

impl PartialEq for TruncatedSeries {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

/// A point of evaluation together with its modulus.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvalPoint {
    z: Complex,
    r: f64,
}

impl EvalPoint {
    pub fn new(z: Complex) -> Self {
        Self { z, r: z.norm() }
    }

    pub fn polar(r: f64, theta: f64) -> Self {
        Self {
            z: Complex::from_polar(r, theta),
            r: r.abs(),
        }
    }

    pub fn z(&self) -> Complex {
        self.z
    }

    pub fn modulus(&self) -> f64 {
        self.r
    }
}

impl From<Complex> for EvalPoint {
    fn from(z: Complex) -> Self {
        Self::new(z)
    }
}

impl From<f64> for EvalPoint {
    fn from(x: f64) -> Self {
        Self::new(Complex::new(x, 0.0))
    }
}

impl TruncatedSeries {
    /// Builds a series from its coefficients; the order is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<Complex>) -> Result<Self, SeriesError> {
        if coeffs.is_empty() {
            return Err(SeriesError::Empty);
        }
        if let Some(index) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(SeriesError::NonFinite { index });
        }
        Ok(Self {
            coeffs,
            label: None,
        })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self, SeriesError> {
        Self::new(coeffs.iter().map(|&x| Complex::new(x, 0.0)).collect())
    }

    // Internal constructor for results of arithmetic on finite inputs.
    pub(crate) fn from_vec(coeffs: Vec<Complex>) -> Self {
        debug_assert!(!coeffs.is_empty());
        Self {
            coeffs,
            label: None,
        }
    }

    pub fn zero(order: usize) -> Self {
        Self::from_vec(vec![Complex::new(0.0, 0.0); order + 1])
    }

    pub fn constant(c: Complex, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Complex::new(1.0, 0.0), order)
    }

    /// `c z^degree`, padded to `order` (which is raised to `degree` if smaller).
    pub fn monomial(c: Complex, degree: usize, order: usize) -> Self {
        let mut s = Self::zero(order.max(degree));
        s.coeffs[degree] = c;
        s
    }

    /// The identity map `z`.
    pub fn identity(order: usize) -> Self {
        Self::monomial(Complex::new(1.0, 0.0), 1, order.max(1))
    }

    /// Prefix of `1/(1-z)`.
    pub fn geometric(order: usize) -> Self {
        Self::from_vec(vec![Complex::new(1.0, 0.0); order + 1])
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    /// Coefficient of `z^k`; zero above the truncation order.
    pub fn coeff(&self, k: usize) -> Complex {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    pub fn constant_term(&self) -> Complex {
        self.coeffs[0]
    }

    /// Cuts or zero-pads to the given order.
    pub fn truncate(&self, order: usize) -> Self {
        let coeffs = (0..=order).map(|k| self.coeff(k)).collect();
        Self::from_vec(coeffs)
    }

    /// Largest coefficientwise difference, treating missing entries as zero.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n)
            .map(|k| (self.coeff(k) - other.coeff(k)).norm())
            .fold(0.0, f64::max)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().max(other.order());
        Self::from_vec((0..=n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().max(other.order());
        Self::from_vec((0..=n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn scale(&self, c: Complex) -> Self {
        Self::from_vec(self.coeffs.iter().map(|&a| a * c).collect())
    }

    /// Cauchy product truncated at degree `order`.
    ///
    /// Operands are treated as the polynomials they store, so degrees above
    /// `self.order() + other.order()` come out zero.
    pub fn mul(&self, other: &Self, order: usize) -> Self {
        let mut out = vec![Complex::new(0.0, 0.0); order + 1];
        for (i, &a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a == Complex::new(0.0, 0.0) {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                out[i + j] += a * b;
            }
        }
        Self::from_vec(out)
    }

    /// `self^k` truncated at `order`, by repeated squaring.
    pub fn pow(&self, mut k: u32, order: usize) -> Self {
        let mut result = Self::one(order);
        let mut base = self.truncate(order);
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base, order);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base, order);
            }
        }
        result
    }

    /// Coefficients of `self ∘ inner` through degree `order` (Horner scheme).
    ///
    /// `inner(0)` must be exactly zero: only then do the outer terms above
    /// degree `order` contribute nothing below `z^{order+1}`.
    pub fn compose(&self, inner: &Self, order: usize) -> Result<Self, SeriesError> {
        let c0 = inner.constant_term();
        if c0 != Complex::new(0.0, 0.0) {
            return Err(SeriesError::NonzeroInnerConstant(c0));
        }
        let inner = inner.truncate(order);
        let top = self.order().min(order);
        let mut acc = Self::zero(order);
        for &c in self.coeffs[..=top].iter().rev() {
            acc = acc.mul(&inner, order);
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }

    /// `exp(self)` through degree `order`.
    ///
    /// Uses `n e_n = sum_{k=1..n} k f_k e_{n-k}` started from `e_0 = exp(f_0)`,
    /// which is the same as `exp(f_0) * exp(f - f_0)`.
    pub fn exp_series(&self, order: usize) -> Self {
        let f = self.truncate(order);
        let mut e = vec![Complex::new(0.0, 0.0); order + 1];
        e[0] = f.coeffs[0].exp();
        for n in 1..=order {
            let mut acc = Complex::new(0.0, 0.0);
            for k in 1..=n {
                acc += f.coeffs[k] * e[n - k] * k as f64;
            }
            e[n] = acc / n as f64;
        }
        Self::from_vec(e)
    }

    /// Multiplicative inverse through degree `order`.
    pub fn reciprocal(&self, order: usize) -> Result<Self, SeriesError> {
        let f0 = self.constant_term();
        if f0 == Complex::new(0.0, 0.0) {
            return Err(SeriesError::ZeroConstantTerm);
        }
        let inv0 = f0.inv();
        let mut g = vec![Complex::new(0.0, 0.0); order + 1];
        g[0] = inv0;
        for n in 1..=order {
            let mut acc = Complex::new(0.0, 0.0);
            for k in 1..=n.min(self.order()) {
                acc += self.coeffs[k] * g[n - k];
            }
            g[n] = -acc * inv0;
        }
        Ok(Self::from_vec(g))
    }

    /// Termwise derivative; the order drops by one (an order-0 series maps to `0`).
    pub fn differentiate(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        Self::from_vec(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    /// Antiderivative vanishing at 0; the order rises by one.
    pub fn integrate(&self) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(Complex::new(0.0, 0.0));
        out.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, &c)| c / (k + 1) as f64),
        );
        Self::from_vec(out)
    }

    /// Horner evaluation of the stored polynomial. No tail estimate.
    pub fn eval(&self, point: impl Into<EvalPoint>) -> Complex {
        let z = point.into().z();
        self.coeffs
            .iter()
            .rev()
            .fold(Complex::new(0.0, 0.0), |acc, &c| acc * z + c)
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::add(self, rhs)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::sub(self, rhs)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        self.scale(Complex::new(-1.0, 0.0))
    }
}

impl Mul<Complex> for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: Complex) -> TruncatedSeries {
        self.scale(rhs)
    }
}

/// Integer-coefficient polynomial prefix with overflow-checked arithmetic.
///
/// Used as an exact oracle for series whose coefficients are known to be
/// integers (the expansion of the modular function in the nome).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerSeries {
    coeffs: Vec<i64>,
}

impl IntegerSeries {
    pub fn new(coeffs: Vec<i64>) -> Result<Self, SeriesError> {
        if coeffs.is_empty() {
            return Err(SeriesError::Empty);
        }
        Ok(Self { coeffs })
    }

    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![0; order + 1];
        coeffs[0] = 1;
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> i64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn mul(&self, other: &Self, order: usize) -> Result<Self, SeriesError> {
        let mut out = vec![0i64; order + 1];
        for (i, &a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                out[i + j] = a
                    .checked_mul(b)
                    .and_then(|p| out[i + j].checked_add(p))
                    .ok_or(SeriesError::Overflow { degree: i + j })?;
            }
        }
        Ok(Self { coeffs: out })
    }

    /// Inverse of a series with constant term `1`.
    pub fn reciprocal_unit(&self, order: usize) -> Result<Self, SeriesError> {
        if self.coeffs[0] != 1 {
            return Err(SeriesError::ZeroConstantTerm);
        }
        let mut g = vec![0i64; order + 1];
        g[0] = 1;
        for n in 1..=order {
            let mut acc: i64 = 0;
            for k in 1..=n.min(self.order()) {
                acc = self.coeffs[k]
                    .checked_mul(g[n - k])
                    .and_then(|p| acc.checked_add(p))
                    .ok_or(SeriesError::Overflow { degree: n })?;
            }
            g[n] = acc.checked_neg().ok_or(SeriesError::Overflow { degree: n })?;
        }
        Ok(Self { coeffs: g })
    }

    pub fn pow(&self, k: u32, order: usize) -> Result<Self, SeriesError> {
        let mut out = Self::one(order);
        for _ in 0..k {
            out = out.mul(self, order)?;
        }
        Ok(out)
    }

    pub fn to_complex(&self) -> TruncatedSeries {
        TruncatedSeries::from_vec(
            self.coeffs
                .iter()
                .map(|&c| Complex::new(c as f64, 0.0))
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(xs: &[f64]) -> TruncatedSeries {
        TruncatedSeries::from_real(xs).unwrap()
    }

    fn c(x: f64) -> Complex {
        Complex::new(x, 0.0)
    }

    #[test]
    fn add_examples() {
        assert_eq!(real(&[1.0, 1.0]).add(&real(&[1.0, -1.0])), real(&[2.0, 0.0]));
        let f = real(&[0.5, -2.0, 3.0]);
        assert_eq!(f.add(&TruncatedSeries::zero(0)), f);
        assert_eq!(
            real(&[0.0, 1.0, 1.0]).add(&real(&[0.0, 0.0, 1.0])),
            real(&[0.0, 1.0, 2.0])
        );
    }

    #[test]
    fn mul_examples() {
        assert_eq!(
            real(&[1.0, 1.0]).mul(&real(&[1.0, -1.0]), 2),
            real(&[1.0, 0.0, -1.0])
        );
        let f = real(&[0.5, -2.0, 3.0]);
        assert_eq!(f.mul(&TruncatedSeries::one(0), 2), f);
        let one = TruncatedSeries::geometric(5).mul(&real(&[1.0, -1.0]), 5);
        assert_eq!(one, TruncatedSeries::one(5));
    }

    #[test]
    fn compose_examples() {
        // z/(1-z) prefix composed with z^2
        let outer = real(&[0.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0]);
        let inner = real(&[0.0, 0.0, 1.0]);
        let got = outer.compose(&inner, 6).unwrap();
        assert_eq!(got, real(&[0.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0]));

        let f = real(&[1.0, 2.0, -3.0, 0.25]);
        assert_eq!(f.compose(&TruncatedSeries::identity(3), 3).unwrap(), f);

        let exp_prefix = real(&[1.0, 1.0, 0.5, 1.0 / 6.0, 1.0 / 24.0]);
        let got = exp_prefix.compose(&real(&[0.0, 2.0]), 4).unwrap();
        let want = real(&[1.0, 2.0, 2.0, 4.0 / 3.0, 2.0 / 3.0]);
        assert!(got.max_abs_diff(&want) < 1e-15);
    }

    #[test]
    fn compose_rejects_nonzero_inner_constant() {
        let err = real(&[1.0, 1.0]).compose(&real(&[1e-300, 1.0]), 3);
        assert!(matches!(err, Err(SeriesError::NonzeroInnerConstant(_))));
    }

    #[test]
    fn exp_examples() {
        assert_eq!(TruncatedSeries::zero(3).exp_series(3), TruncatedSeries::one(3));
        let e = TruncatedSeries::identity(3).exp_series(3);
        assert!(e.max_abs_diff(&real(&[1.0, 1.0, 0.5, 1.0 / 6.0])) < 1e-16);
    }

    #[test]
    fn exp_of_cayley_exponent() {
        // -(1+z)/(1-z) = -1 - 2z - 2z^2 - ...
        let m = real(&[-1.0, -2.0, -2.0]);
        let e = m.exp_series(2);
        // Oracle: e^{-1} * exp(-2z - 2z^2) expanded by hand,
        // exp(u) = 1 + u + u^2/2 with u = -2z - 2z^2 gives 1 - 2z + (-2 + 2) z^2.
        let em1 = (-1.0f64).exp();
        let want = real(&[em1, -2.0 * em1, 0.0]);
        assert!(e.max_abs_diff(&want) < 1e-16);
    }

    #[test]
    fn reciprocal_examples() {
        let g = real(&[1.0, -1.0]).reciprocal(3).unwrap();
        assert_eq!(g, TruncatedSeries::geometric(3));
        assert_eq!(
            TruncatedSeries::one(4).reciprocal(4).unwrap(),
            TruncatedSeries::one(4)
        );
        let f = real(&[2.0, 1.0]);
        let g = f.reciprocal(2).unwrap();
        assert!(g.max_abs_diff(&real(&[0.5, -0.25, 0.125])) < 1e-16);
        // convolve back
        assert!(f.mul(&g, 2).max_abs_diff(&TruncatedSeries::one(2)) < 1e-16);
        assert_eq!(
            real(&[0.0, 1.0]).reciprocal(2),
            Err(SeriesError::ZeroConstantTerm)
        );
    }

    #[test]
    fn calculus_examples() {
        assert_eq!(real(&[0.0, 0.0, 1.0]).differentiate(), real(&[0.0, 2.0]));
        assert_eq!(TruncatedSeries::one(0).integrate(), real(&[0.0, 1.0]));
        let f = real(&[3.0, 1.0, -2.0, 0.5]);
        let back = f.differentiate().integrate();
        assert!(back.max_abs_diff(&f.sub(&TruncatedSeries::constant(c(3.0), 0))) < 1e-16);
    }

    #[test]
    fn eval_examples() {
        assert_eq!(real(&[1.0, 1.0]).eval(0.0), c(1.0));
        let v = real(&[0.0, 0.0, 1.0]).eval(Complex::new(0.0, 1.0));
        assert_eq!(v, c(-1.0));
        let g = TruncatedSeries::geometric(50).eval(0.1);
        assert!((g - c(1.0 / 0.9)).norm() < 1e-15);
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert_eq!(TruncatedSeries::new(vec![]), Err(SeriesError::Empty));
        assert_eq!(
            TruncatedSeries::from_real(&[1.0, f64::NAN]),
            Err(SeriesError::NonFinite { index: 1 })
        );
    }

    #[test]
    fn eval_point_caches_modulus() {
        let p = EvalPoint::new(Complex::new(3.0, 4.0));
        assert_eq!(p.modulus(), 5.0);
        let q = EvalPoint::polar(0.25, 1.0);
        assert!((q.z().norm() - q.modulus()).abs() <= f64::EPSILON);
    }

    #[test]
    fn integer_series_detects_overflow() {
        let big = IntegerSeries::new(vec![1, i64::MAX / 2]).unwrap();
        assert!(matches!(big.pow(3, 3), Err(SeriesError::Overflow { .. })));
        let g = IntegerSeries::new(vec![1, 1]).unwrap().reciprocal_unit(4).unwrap();
        assert_eq!(g.coeffs(), &[1, -1, 1, -1, 1]);
    }
}
