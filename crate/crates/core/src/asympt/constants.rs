//! Lattice constants defined by Bessel integrals.

use crate::combinatorics::binomial;
use crate::error::{Error, Result};
use crate::specfun::{
    catalan_constant, gamma, i0_scaled_unchecked, integrate_frullani, FrullaniIntegrand, QuadResult,
    QuadratureSpec, TaylorSeries,
};
use serde::Serialize;
use std::f64::consts::{LN_2, PI};

fn lattice_kernel(t: f64, power: u32) -> f64 {
    i0_scaled_unchecked(2.0 * t).powi(power as i32)
}

/// `(e^{−2t} I₀(2t))^p`.
fn lattice_series(power: u32) -> TaylorSeries {
    (TaylorSeries::exp_neg(2.0) * TaylorSeries::bessel_i0(2.0)).powi(power)
}

fn unit_kernel(t: f64, power: u32) -> f64 {
    i0_scaled_unchecked(t).powi(power as i32)
}

/// `(e^{−t} I₀(t))^p`.
fn unit_series(power: u32) -> TaylorSeries {
    (TaylorSeries::exp_neg(1.0) * TaylorSeries::bessel_i0(1.0)).powi(power)
}

fn check_range(name: &str, v: u32, lo: u32, hi: u32) -> Result<()> {
    if v < lo || v > hi {
        return Err(Error::Parameter(format!("{name} must be in {lo}..={hi}, got {v}")));
    }
    Ok(())
}

/// `c_d = ∫₀^∞ (e^{−t} − e^{−2dt} I₀(2t)^d) dt/t`.
pub fn lattice_constant(d: u32, spec: &QuadratureSpec) -> Result<QuadResult> {
    check_range("d", d, 1, 6)?;
    let g = FrullaniIntegrand::new(
        move |t| (-t).exp() - lattice_kernel(t, d),
        TaylorSeries::exp_neg(1.0) - lattice_series(d),
    );
    integrate_frullani(&g, spec)
}

/// `c₂ = 4G/π`.
pub fn lattice_constant_2d_closed() -> f64 {
    4.0 * catalan_constant() / PI
}

/// `I^d_m(0) = −4^{−(d−m)} ∫₀^∞ (1 − e^{−4t})^{d−m} e^{−2mt} I₀(2t)^m dt/t`,
/// the coefficient of `V^d_m n^m`.
pub fn boundary_coeff(d: u32, m: u32, spec: &QuadratureSpec) -> Result<QuadResult> {
    check_range("d", d, 2, 6)?;
    check_range("m", m, 1, d - 1)?;
    let gap = d - m;
    let g = FrullaniIntegrand::new(
        move |t| (-(-4.0 * t).exp_m1()).powi(gap as i32) * lattice_kernel(t, m),
        TaylorSeries::one_minus_exp_neg(4.0).powi(gap) * lattice_series(m),
    );
    let r = integrate_frullani(&g, spec)?;
    let scale = -(4f64).powi(-(gap as i32));
    Ok(QuadResult { value: scale * r.value, error: scale.abs() * r.error })
}

/// `I^d_1(0) = 4^{−(d−1)} Σ_{k=1}^{d−1} C(d−1,k)(−1)^k log(2k+1+2√(k²+k))`.
pub fn boundary_coeff_m1_closed(d: u32) -> Result<f64> {
    check_range("d", d, 2, 30)?;
    let sum: f64 = (1..d)
        .map(|k| {
            let kf = k as f64;
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            sign * binomial(d - 1, k) as f64 * (2.0 * kf + 1.0 + 2.0 * (kf * kf + kf).sqrt()).ln()
        })
        .sum();
    Ok(sum * 4f64.powi(-(d as i32 - 1)))
}

/// Watson integral `W_d = ∫₀^∞ e^{−dt} I₀(t)^d dt`; divergent for `d ≤ 2`.
pub fn watson(d: u32, spec: &QuadratureSpec) -> Result<QuadResult> {
    if d <= 2 {
        return Err(Error::Divergence(format!(
            "W_{d} diverges: e^(-dt) I0(t)^d decays like t^(-{d}/2)"
        )));
    }
    check_range("d", d, 3, 6)?;
    let g = FrullaniIntegrand::new(
        move |t| t * unit_kernel(t, d),
        TaylorSeries::monomial(1) * unit_series(d),
    );
    integrate_frullani(&g, spec)
}

/// `W₃ = (√3 − 1)(Γ(1/24)Γ(11/24))² / (96π³)`.
pub fn watson3_closed() -> f64 {
    let g = gamma(1.0 / 24.0) * gamma(11.0 / 24.0);
    (3f64.sqrt() - 1.0) * g * g / (96.0 * PI.powi(3))
}

/// `G_d(k, w) = Γ(k)^{−1} ∫₀^∞ t^{k−1} e^{−wt} I₀(t)^d dt`.
pub fn green(d: u32, k: u32, w: f64, spec: &QuadratureSpec) -> Result<QuadResult> {
    check_range("d", d, 1, 6)?;
    if k == 0 {
        return Err(Error::Parameter("k must be positive".into()));
    }
    let excess = w - d as f64;
    if !(excess >= 0.0) || !w.is_finite() {
        return Err(Error::Divergence(format!(
            "G_{d}({k}, {w}) needs w >= d: the integrand grows like e^((d-w)t)"
        )));
    }
    if excess == 0.0 && 2 * k >= d {
        return Err(Error::Divergence(format!(
            "G_{d}({k}, {d}) diverges: the integrand decays only like t^({k}-1-{d}/2), needs 2k < d"
        )));
    }
    let norm = gamma(k as f64);
    let g = FrullaniIntegrand::new(
        move |t| t.powi(k as i32) * (-excess * t).exp() * unit_kernel(t, d) / norm,
        (TaylorSeries::monomial(k as usize) * TaylorSeries::exp_neg(excess) * unit_series(d))
            .scale(1.0 / norm),
    );
    integrate_frullani(&g, spec)
}

/// Glasser's `J_m(w) = ∫₀^∞ (e^{−t} − e^{−wt} I₀(t)^m) dt/t`, `w ≥ m`.
pub fn glasser_j(m: u32, w: f64, spec: &QuadratureSpec) -> Result<QuadResult> {
    check_range("m", m, 1, 6)?;
    let excess = w - m as f64;
    if !(excess >= 0.0) || !w.is_finite() {
        return Err(Error::Parameter(format!("J_{m}(w) needs w >= {m}, got {w}")));
    }
    let g = FrullaniIntegrand::new(
        move |t| (-t).exp() - (-excess * t).exp() * unit_kernel(t, m),
        TaylorSeries::exp_neg(1.0) - TaylorSeries::exp_neg(excess) * unit_series(m),
    );
    integrate_frullani(&g, spec)
}

/// `Σ_{k=0}^{d−m} C(d−m,k)(−1)^k J_m(2k+m)`, which equals
/// `−∫(1−e^{−4t})^{d−m} e^{−2mt} I₀(2t)^m dt/t = 4^{d−m} I^d_m(0)`.
pub fn glasser_boundary_sum(d: u32, m: u32, spec: &QuadratureSpec) -> Result<QuadResult> {
    check_range("m", m, 1, d.saturating_sub(1).max(1))?;
    let mut value = 0.0;
    let mut error = 0.0;
    for k in 0..=d - m {
        let j = glasser_j(m, (2 * k + m) as f64, spec)?;
        let c = binomial(d - m, k) as f64 * if k % 2 == 0 { 1.0 } else { -1.0 };
        value += c * j.value;
        error += c.abs() * j.error;
    }
    Ok(QuadResult { value, error })
}

/// Mahler measure of `4k + 2m + Σ_j (x_j + 1/x_j)` with `w = 2k + m`, by the
/// trapezoid rule on `points^m` nodes of the unit torus; equals
/// `log 2 + J_m(w)`.
pub fn mahler_measure_trapezoid(m: u32, w: f64, points: usize) -> Result<f64> {
    check_range("m", m, 1, 3)?;
    if !(w > m as f64) {
        return Err(Error::Parameter(format!("trapezoid rule needs w > m, got w = {w}")));
    }
    if points == 0 {
        return Err(Error::Parameter("points must be positive".into()));
    }
    let cosines: Vec<f64> = (0..points)
        .map(|j| (2.0 * PI * j as f64 / points as f64).cos())
        .collect();
    let total = points.pow(m);
    let mut acc = crate::sum::CompensatedSum::new();
    for idx in 0..total {
        let mut rest = idx;
        let mut s = w;
        for _ in 0..m {
            s += cosines[rest % points];
            rest /= points;
        }
        acc.add(s.ln());
    }
    Ok(LN_2 + acc.value() / total as f64)
}

/// Which printed form of `I³₁(0)` the quadrature supports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryCandidate {
    /// `(1/16) log((17+2√2)(5−2√6))`.
    Printed,
    /// `(1/16) log((17+12√2)(5−2√6))`, from the `m = 1` closed form.
    Corrected,
    Neither,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundaryVerdict {
    pub quadrature: f64,
    pub quadrature_error: f64,
    pub printed_candidate: f64,
    pub corrected_candidate: f64,
    /// Candidate whose magnitude matches the quadrature within the tolerance.
    pub matches: BoundaryCandidate,
    /// Whether the sign of the matching candidate agrees as well.
    pub sign_agrees: bool,
}

/// Decides between the two printed forms of `I³₁(0)`.
pub fn boundary_verdict_3_1(tolerance: f64, spec: &QuadratureSpec) -> Result<BoundaryVerdict> {
    let q = boundary_coeff(3, 1, spec)?;
    let tail = (5.0 - 2.0 * 6f64.sqrt()).ln();
    let printed = ((17.0 + 2.0 * 2f64.sqrt()).ln() + tail) / 16.0;
    let corrected = ((17.0 + 12.0 * 2f64.sqrt()).ln() + tail) / 16.0;
    let hit = |c: f64| (q.value.abs() - c.abs()).abs() <= tolerance;
    let (matches, candidate) = match (hit(printed), hit(corrected)) {
        (true, false) => (BoundaryCandidate::Printed, printed),
        (false, true) => (BoundaryCandidate::Corrected, corrected),
        _ => (BoundaryCandidate::Neither, f64::NAN),
    };
    Ok(BoundaryVerdict {
        quadrature: q.value,
        quadrature_error: q.error,
        printed_candidate: printed,
        corrected_candidate: corrected,
        matches,
        sign_agrees: candidate.signum() == q.value.signum(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const C2: f64 = 1.166_243_616_123_275_1;
    const C3: f64 = 1.673_389_302_970_196_7;
    const C4: f64 = 1.999_707_644_517_312_6;
    const W3: f64 = 0.505_462_019_717_326;
    const W4: f64 = 0.309_866_780_462_120_4;

    fn spec() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    #[test]
    fn lattice_constants() {
        assert!(lattice_constant(1, &spec()).unwrap().value.abs() < 1e-10);
        for (d, want) in [(2, C2), (3, C3), (4, C4)] {
            let v = lattice_constant(d, &spec()).unwrap().value;
            assert!((v - want).abs() < 1e-10, "c_{d} = {v}");
        }
        assert!((lattice_constant_2d_closed() - C2).abs() < 1e-14);
        assert!(lattice_constant(0, &spec()).is_err());
        assert!(lattice_constant(7, &spec()).is_err());
    }

    #[test]
    fn boundary_coefficients() {
        let frozen = [
            (2, 1, -0.440_686_793_509_771_5),
            (3, 1, -0.077_066_417_407_312_15),
            (3, 2, -0.219_863_163_022_684_94),
            (4, 1, -0.016_325_973_551_302_477),
            (4, 2, -0.028_411_815_590_835_484),
            (4, 3, -0.149_141_134_136_556_8),
        ];
        for (d, m, want) in frozen {
            let v = boundary_coeff(d, m, &spec()).unwrap().value;
            assert!((v - want).abs() < 1e-10, "I^{d}_{m} = {v}");
        }
        assert!((boundary_coeff_m1_closed(2).unwrap() + 0.5 * (1.0 + 2f64.sqrt()).ln()).abs() < 1e-15);
        assert!(boundary_coeff(3, 3, &spec()).is_err());
    }

    #[test]
    fn watson_and_green() {
        let w3 = watson(3, &spec()).unwrap().value;
        assert!((w3 - W3).abs() < 1e-10);
        assert!((watson3_closed() - W3).abs() < 1e-12);
        assert!((watson(4, &spec()).unwrap().value - W4).abs() < 1e-10);
        assert!(matches!(watson(2, &spec()), Err(Error::Divergence(_))));
        assert!((green(3, 1, 3.0, &spec()).unwrap().value - w3).abs() < 1e-11);
        let g = green(1, 1, 3.0, &spec()).unwrap().value;
        assert!((g - 1.0 / 8f64.sqrt()).abs() < 1e-11);
        let g = green(5, 2, 5.0, &spec()).unwrap().value;
        assert!((g - 0.077_397_657_615_294_05).abs() < 1e-10);
        assert!(matches!(green(3, 2, 3.0, &spec()), Err(Error::Divergence(_))));
        assert!(matches!(green(3, 1, 2.5, &spec()), Err(Error::Divergence(_))));
    }

    #[test]
    fn glasser_values() {
        let j13 = glasser_j(1, 3.0, &spec()).unwrap().value;
        assert!((j13 - ((3.0 + 2.0 * 2f64.sqrt()).ln() - LN_2)).abs() < 1e-10);
        let j22 = glasser_j(2, 2.0, &spec()).unwrap().value;
        assert!((j22 + LN_2 - C2).abs() < 1e-10);
        let j24 = glasser_j(2, 4.0, &spec()).unwrap().value;
        assert!((j24 - 1.352_549_087_654_069_6).abs() < 1e-10);
        let mahler = mahler_measure_trapezoid(2, 4.0, 64).unwrap();
        assert!((mahler - LN_2 - j24).abs() < 1e-8);
        assert!(glasser_j(2, 1.5, &spec()).is_err());
    }

    #[test]
    fn verdict_certifies_corrected_candidate() {
        let v = boundary_verdict_3_1(1e-9, &spec()).unwrap();
        assert_eq!(v.matches, BoundaryCandidate::Corrected);
        assert!(!v.sign_agrees);
        assert!((v.printed_candidate - 0.0434).abs() < 1e-4);
    }
}
