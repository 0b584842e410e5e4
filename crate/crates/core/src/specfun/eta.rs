use crate::error::{Error, Result};
use std::f64::consts::PI;

/// Dedekind eta on the imaginary axis, `η(iy) = q^{1/24} ∏_{k≥1} (1 − q^k)`
/// with `q = e^{−2πy}`.
///
/// For `y < 1` the modular relation `η(iy) = η(i/y) / √y` moves the argument
/// to where `q ≤ e^{−2π}` and the product converges fast.
pub fn dedekind_eta_imag(y: f64) -> Result<f64> {
    if !(y > 0.0) || !y.is_finite() {
        return Err(Error::Domain(format!("eta needs finite y > 0, got {y}")));
    }
    if y < 1.0 {
        return Ok(eta_product(1.0 / y) / y.sqrt());
    }
    Ok(eta_product(y))
}

fn eta_product(y: f64) -> f64 {
    let q = (-2.0 * PI * y).exp();
    let mut log_prod = -PI * y / 12.0;
    let mut qk = q;
    while qk > 1e-18 {
        log_prod += (-qk).ln_1p();
        qk *= q;
    }
    log_prod.exp()
}
