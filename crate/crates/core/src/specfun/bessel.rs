//! Modified Bessel functions of the first kind for non-negative integer
//! order and real non-negative argument.
//!
//! Small arguments use the ascending power series, whose terms are all
//! positive. Large arguments use the Hankel asymptotic expansion of the
//! exponentially scaled function `e^{-x} I_n(x)`, so nothing overflows for
//! arguments far beyond the range of `exp`.

use crate::error::{Error, Result};
use std::f64::consts::PI;

/// Crossover between the power series and the asymptotic expansion.
pub const SERIES_LIMIT: f64 = 30.0;

const EPS: f64 = 1e-17;

fn check_arg(x: f64) -> Result<()> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::Domain(format!(
            "Bessel argument must be finite and non-negative, got {x}"
        )));
    }
    Ok(())
}

/// `I_0(x)`.
pub fn bessel_i0(x: f64) -> Result<f64> {
    check_arg(x)?;
    if x <= SERIES_LIMIT {
        Ok(series(0, x))
    } else {
        Ok(asymptotic_scaled(0, x).expect("order-0 expansion converges past the crossover") * x.exp())
    }
}

/// `e^{-x} I_0(x)`.
pub fn bessel_i0_scaled(x: f64) -> Result<f64> {
    check_arg(x)?;
    Ok(i0_scaled_unchecked(x))
}

/// Unchecked scaled `I_0` for hot integrand loops; `x` must be `>= 0`.
#[inline]
pub(crate) fn i0_scaled_unchecked(x: f64) -> f64 {
    if x <= SERIES_LIMIT {
        series(0, x) * (-x).exp()
    } else {
        asymptotic_scaled(0, x).expect("order-0 expansion converges past the crossover")
    }
}

/// `I_n(x)`.
pub fn bessel_in(order: u32, x: f64) -> Result<f64> {
    check_arg(x)?;
    if x <= SERIES_LIMIT {
        Ok(series(order, x))
    } else {
        Ok(bessel_in_scaled(order, x)? * x.exp())
    }
}

/// `e^{-x} I_n(x)`.
pub fn bessel_in_scaled(order: u32, x: f64) -> Result<f64> {
    check_arg(x)?;
    if x <= SERIES_LIMIT {
        return Ok(series(order, x) * (-x).exp());
    }
    if let Some(v) = asymptotic_scaled(order, x) {
        return Ok(v);
    }
    Ok(miller_scaled(order, x))
}

/// Ascending series `(x/2)^n Σ (x²/4)^k / (k! (k+n)!)`.
pub(crate) fn series(order: u32, x: f64) -> f64 {
    if x == 0.0 {
        return if order == 0 { 1.0 } else { 0.0 };
    }
    let n = order as f64;
    let lead = if order == 0 {
        1.0
    } else {
        (n * (x / 2.0).ln() - libm::lgamma(n + 1.0)).exp()
    };
    let q = x * x / 4.0;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 1.0;
    loop {
        term *= q / (k * (k + n));
        sum += term;
        if term < EPS * sum {
            break;
        }
        k += 1.0;
    }
    lead * sum
}

/// Hankel expansion of `e^{-x} I_n(x)`; `None` when the series cannot reach
/// full precision at this argument before its terms start growing.
pub(crate) fn asymptotic_scaled(order: u32, x: f64) -> Option<f64> {
    let mu = 4.0 * (order as f64).powi(2);
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k: f64 = 1.0;
    loop {
        let next = -term * (mu - (2.0 * k - 1.0).powi(2)) / (8.0 * k * x);
        if next == 0.0 {
            break;
        }
        if next.abs() >= term.abs() {
            return None;
        }
        term = next;
        sum += term;
        if term.abs() < EPS * sum.abs() {
            break;
        }
        k += 1.0;
        if k > 500.0 {
            return None;
        }
    }
    Some(sum / (2.0 * PI * x).sqrt())
}

/// Miller backward recurrence normalised by `e^{-x} I_0(x)`.
fn miller_scaled(order: u32, x: f64) -> f64 {
    if order == 0 {
        return i0_scaled_unchecked(x);
    }
    let n = order as usize;
    let start = n + x.ceil() as usize + 64 + (40.0 * n as f64).sqrt() as usize;
    let mut next = 0.0f64; // I_{k+1}
    let mut cur = 1e-300f64; // I_k
    let mut at_order = 0.0;
    for k in (1..=start).rev() {
        let prev = next + 2.0 * k as f64 / x * cur;
        next = cur;
        cur = prev;
        if k - 1 == n {
            at_order = cur;
        }
        if cur.abs() > 1e250 {
            cur *= 1e-250;
            next *= 1e-250;
            at_order *= 1e-250;
        }
    }
    at_order / cur * i0_scaled_unchecked(x)
}
