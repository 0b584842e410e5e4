use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// `a + b√2` with arbitrary-precision integer parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct AlgebraicInt {
    pub a: BigInt,
    pub b: BigInt,
}

impl AlgebraicInt {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        Self { a: a.into(), b: b.into() }
    }

    pub fn from_int(a: impl Into<BigInt>) -> Self {
        Self::new(a, 0)
    }

    pub fn sqrt2() -> Self {
        Self::new(0, 1)
    }

    pub fn conjugate(&self) -> Self {
        Self { a: self.a.clone(), b: -&self.b }
    }

    /// `a² − 2b²`.
    pub fn norm(&self) -> BigInt {
        &self.a * &self.a - BigInt::from(2) * &self.b * &self.b
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::from_int(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * std::f64::consts::SQRT_2
    }
}

impl Add for &AlgebraicInt {
    type Output = AlgebraicInt;
    fn add(self, o: &AlgebraicInt) -> AlgebraicInt {
        AlgebraicInt { a: &self.a + &o.a, b: &self.b + &o.b }
    }
}

impl Sub for &AlgebraicInt {
    type Output = AlgebraicInt;
    fn sub(self, o: &AlgebraicInt) -> AlgebraicInt {
        AlgebraicInt { a: &self.a - &o.a, b: &self.b - &o.b }
    }
}

impl Mul for &AlgebraicInt {
    type Output = AlgebraicInt;
    fn mul(self, o: &AlgebraicInt) -> AlgebraicInt {
        AlgebraicInt {
            a: &self.a * &o.a + BigInt::from(2) * &self.b * &o.b,
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }
}

impl Neg for &AlgebraicInt {
    type Output = AlgebraicInt;
    fn neg(self) -> AlgebraicInt {
        AlgebraicInt { a: -&self.a, b: -&self.b }
    }
}

macro_rules! by_value {
    ($tr:ident, $f:ident) => {
        impl $tr for AlgebraicInt {
            type Output = AlgebraicInt;
            fn $f(self, o: AlgebraicInt) -> AlgebraicInt {
                (&self).$f(&o)
            }
        }
    };
}
by_value!(Add, add);
by_value!(Sub, sub);
by_value!(Mul, mul);

impl fmt::Display for AlgebraicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.b.is_negative() {
            write!(f, "{} - {}√2", self.a, -&self.b)
        } else {
            write!(f, "{} + {}√2", self.a, self.b)
        }
    }
}

/// `U₀ = 0`, `U₁ = 1`, `U_{n+1} = 6U_n − U_{n−1}`.
pub fn u_sequence(n: u32) -> BigInt {
    let (mut prev, mut cur) = (BigInt::zero(), BigInt::one());
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = BigInt::from(6) * &cur - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// `∏_{k=1}^{n−1} (2c − 2cos(πk/n))` for `c = shift ∈ {1, 3}`, exactly:
/// `n` for shift 1 and `U_n` for shift 3.
pub fn chebyshev_product(shift: u32, n: u32) -> Result<AlgebraicInt> {
    if n == 0 {
        return Err(Error::Parameter("n must be >= 1".into()));
    }
    match shift {
        1 => Ok(AlgebraicInt::from_int(n)),
        3 => Ok(AlgebraicInt::from_int(u_sequence(n))),
        _ => Err(Error::Parameter(format!("shift must be 1 or 3, got {shift}"))),
    }
}

/// `(3+2√2)^n − (3−2√2)^n`, which equals `4√2·U_n`.
pub fn silver_difference(n: u32) -> AlgebraicInt {
    let unit = AlgebraicInt::new(3, 2);
    &unit.pow(n) - &unit.conjugate().pow(n)
}

/// Floating-point evaluation of the same product, for cross-checks.
pub fn chebyshev_product_f64(shift: u32, n: u32) -> f64 {
    (1..n)
        .map(|k| 2.0 * shift as f64 - 2.0 * (std::f64::consts::PI * k as f64 / n as f64).cos())
        .product()
}
