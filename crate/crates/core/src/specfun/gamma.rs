//! Gamma-family helpers for the lattice-sum representations.

use crate::error::{Error, Result};
use std::f64::consts::PI;

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// `Γ(x)` for real `x`.
pub fn gamma(x: f64) -> f64 {
    libm::tgamma(x)
}

/// Exponential integral `E_1(x) = Γ(0, x)` for `x > 0`.
pub fn exp_integral_e1(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("E1 needs x > 0, got {x}")));
    }
    if x > 700.0 {
        return Ok(0.0);
    }
    if x <= 1.0 {
        // -γ - ln x + Σ_{k≥1} (-1)^{k+1} x^k / (k k!)
        let mut sum = 0.0;
        let mut term = 1.0;
        let mut k = 1.0;
        loop {
            term *= -x / k;
            let contrib = -term / k;
            sum += contrib;
            if contrib.abs() < 1e-17 * sum.abs().max(1e-300) {
                break;
            }
            k += 1.0;
        }
        return Ok(-EULER_GAMMA - x.ln() + sum);
    }
    // Modified Lentz on the continued fraction e^{-x} / (x + 1 - 1/(x + 3 - 4/(x + 5 - ...)))
    let tiny = 1e-300;
    let mut b = x + 1.0;
    let mut c = 1.0 / tiny;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..10_000 {
        let an = -((i * i) as f64);
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).abs() < 1e-16 {
            break;
        }
    }
    Ok(h * (-x).exp())
}

/// Upper incomplete gamma `Γ(k/2, x)` for half-integer or integer order
/// `k/2 > 0`, built from the `k = 1` and `k = 2` closed forms by the upward
/// recurrence `Γ(a+1, x) = a Γ(a, x) + x^a e^{-x}`.
pub fn upper_gamma_half(k: u32, x: f64) -> Result<f64> {
    if k == 0 {
        return exp_integral_e1(x);
    }
    if x < 0.0 {
        return Err(Error::Domain(format!("incomplete gamma needs x >= 0, got {x}")));
    }
    let (mut a, mut value) = if k % 2 == 1 {
        (0.5, PI.sqrt() * libm::erfc(x.sqrt()))
    } else {
        (1.0, (-x).exp())
    };
    while 2.0 * a < k as f64 {
        value = a * value + x.powf(a) * (-x).exp();
        a += 1.0;
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e1_reference_values() {
        // A&S table 5.1
        assert!((exp_integral_e1(1.0).unwrap() - 0.219_383_934_395_520_27).abs() < 1e-15);
        assert!((exp_integral_e1(0.5).unwrap() - 0.559_773_594_776_160_8).abs() < 1e-15);
        assert!((exp_integral_e1(5.0).unwrap() - 1.148_295_591_275_325_8e-3).abs() < 1e-17);
        assert!(exp_integral_e1(0.0).is_err());
    }

    #[test]
    fn e1_branches_continuous() {
        let below = exp_integral_e1(1.0 - 1e-12).unwrap();
        let above = exp_integral_e1(1.0 + 1e-12).unwrap();
        assert!((below - above).abs() < 1e-11);
    }

    #[test]
    fn half_integer_incomplete_gamma() {
        // Γ(1/2, 0) = √π, Γ(3/2, 0) = √π/2, Γ(1, x) = e^{-x}
        assert!((upper_gamma_half(1, 0.0).unwrap() - PI.sqrt()).abs() < 1e-15);
        assert!((upper_gamma_half(3, 0.0).unwrap() - PI.sqrt() / 2.0).abs() < 1e-15);
        assert!((upper_gamma_half(2, 1.5).unwrap() - (-1.5f64).exp()).abs() < 1e-16);
        // Γ(3/2, x) = √x e^{-x} + (√π/2) erfc(√x)
        let x = 2.3f64;
        let expect = x.sqrt() * (-x).exp() + 0.5 * PI.sqrt() * libm::erfc(x.sqrt());
        assert!((upper_gamma_half(3, x).unwrap() - expect).abs() < 1e-15);
    }
}
