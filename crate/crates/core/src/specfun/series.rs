//! Truncated Taylor series in `t` about `t = 0`.
//!
//! Integrand descriptors build their small-`t` expansion from these
//! primitives so the expansion is derived from the same factors as the
//! closed-form evaluation.

use std::ops::{Add, Mul, Neg, Sub};

/// Number of retained coefficients (orders `0..ORDER`).
pub const ORDER: usize = 9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TaylorSeries {
    coeffs: [f64; ORDER],
}

impl TaylorSeries {
    pub fn zero() -> Self {
        Self { coeffs: [0.0; ORDER] }
    }

    pub fn constant(c: f64) -> Self {
        let mut s = Self::zero();
        s.coeffs[0] = c;
        s
    }

    pub fn from_coeffs(c: &[f64]) -> Self {
        let mut s = Self::zero();
        for (dst, src) in s.coeffs.iter_mut().zip(c) {
            *dst = *src;
        }
        s
    }

    /// `t^p`.
    pub fn monomial(p: usize) -> Self {
        let mut s = Self::zero();
        if p < ORDER {
            s.coeffs[p] = 1.0;
        }
        s
    }

    /// `e^{-a t}`.
    pub fn exp_neg(a: f64) -> Self {
        let mut s = Self::zero();
        let mut term = 1.0;
        for (k, c) in s.coeffs.iter_mut().enumerate() {
            if k > 0 {
                term *= -a / k as f64;
            }
            *c = term;
        }
        s
    }

    /// `1 - e^{-a t}`.
    pub fn one_minus_exp_neg(a: f64) -> Self {
        Self::constant(1.0) - Self::exp_neg(a)
    }

    /// `I_0(b t)`.
    pub fn bessel_i0(b: f64) -> Self {
        let mut s = Self::zero();
        let q = b * b / 4.0;
        let mut term = 1.0;
        let mut j = 0usize;
        while 2 * j < ORDER {
            if j > 0 {
                term *= q / (j * j) as f64;
            }
            s.coeffs[2 * j] = term;
            j += 1;
        }
        s
    }

    pub fn powi(self, p: u32) -> Self {
        let mut out = Self::constant(1.0);
        for _ in 0..p {
            out = out * self;
        }
        out
    }

    pub fn scale(self, a: f64) -> Self {
        let mut s = self;
        for c in &mut s.coeffs {
            *c *= a;
        }
        s
    }

    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * t + c)
    }

    /// Evaluates `g(t)/t`; requires a vanishing constant term.
    pub fn eval_over_t(&self, t: f64) -> f64 {
        self.coeffs[1..].iter().rev().fold(0.0, |acc, c| acc * t + c)
    }
}

impl Add for TaylorSeries {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut s = self;
        for (a, b) in s.coeffs.iter_mut().zip(rhs.coeffs) {
            *a += b;
        }
        s
    }
}

impl Sub for TaylorSeries {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for TaylorSeries {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

impl Mul for TaylorSeries {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut s = Self::zero();
        for i in 0..ORDER {
            if self.coeffs[i] == 0.0 {
                continue;
            }
            for j in 0..ORDER - i {
                s.coeffs[i + j] += self.coeffs[i] * rhs.coeffs[j];
            }
        }
        s
    }
}
