//! Zeta-regularised determinants of intervals, orthotopes, flat tori and the
//! right isosceles triangle.
//!
//! Torus values come from an incomplete-gamma split of the heat trace (with
//! a Dedekind-eta closed form as a second route in two dimensions).
//! Dirichlet orthotope values follow from the torus values by subset
//! inversion, since `ζ_T(S) = Σ_{∅≠U⊆S} 2^{|U|} ζ_U`.

use crate::combinatorics::{invert, SubsetTable};
use crate::error::{Error, Result};
use crate::specfun::{dedekind_eta_imag, exp_integral_e1, upper_gamma_half, EULER_GAMMA};
use serde::Serialize;
use std::f64::consts::{LN_2, PI};
use std::fmt;
use std::str::FromStr;

/// Riemann `ζ(0)`.
pub const RIEMANN_ZETA_0: f64 = -0.5;
/// Riemann `ζ'(0) = −½ log 2π`.
pub const RIEMANN_ZETA_PRIME_0: f64 = -0.918_938_533_204_672_8;

/// Normalisation of the one-dimensional zeta function.
///
/// `A` counts each Dirichlet eigenvalue `(πk/α)²` once, so `ζ'_α(0) =
/// −log 2α`. `B` carries an extra factor 2, `ζ_α(s) = 2(α/π)^{2s}ζ(2s)`,
/// giving `ζ'_α(0) = −2 log 2α` and the triangle relation with `log 2`
/// in place of `½ log 2`. Only one-dimensional factors differ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum ZetaConvention {
    #[default]
    A,
    B,
}

impl ZetaConvention {
    pub const ALL: [ZetaConvention; 2] = [ZetaConvention::A, ZetaConvention::B];

    fn one_dim_factor(self) -> f64 {
        match self {
            Self::A => 1.0,
            Self::B => 2.0,
        }
    }
}

impl FromStr for ZetaConvention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Self::A),
            "B" | "b" => Ok(Self::B),
            other => Err(Error::Parameter(format!("zeta convention must be A or B, got '{other}'"))),
        }
    }
}

impl fmt::Display for ZetaConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::A => "A",
            Self::B => "B",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DomainKind {
    Interval,
    Orthotope,
    Torus,
    Triangle,
}

/// Side ratios `α_i` for intervals and orthotopes, periods for tori; the
/// triangle has unit legs and no parameters.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DomainSpec {
    pub kind: DomainKind,
    pub lengths: Vec<f64>,
}

impl DomainSpec {
    pub fn new(kind: DomainKind, lengths: Vec<f64>) -> Result<Self> {
        check_lengths(&lengths)?;
        match (kind, lengths.len()) {
            (DomainKind::Interval, 1) | (DomainKind::Orthotope, 1..) | (DomainKind::Torus, 1..) => {}
            (DomainKind::Triangle, _) => return Ok(Self { kind, lengths: Vec::new() }),
            _ => return Err(Error::Parameter("an interval takes exactly one length".into())),
        }
        Ok(Self { kind, lengths })
    }

    pub fn interval(alpha: f64) -> Result<Self> {
        Self::new(DomainKind::Interval, vec![alpha])
    }

    pub fn orthotope(alphas: &[f64]) -> Result<Self> {
        Self::new(DomainKind::Orthotope, alphas.to_vec())
    }

    pub fn torus(periods: &[f64]) -> Result<Self> {
        Self::new(DomainKind::Torus, periods.to_vec())
    }

    pub fn triangle() -> Self {
        Self { kind: DomainKind::Triangle, lengths: Vec::new() }
    }
}

fn check_lengths(lengths: &[f64]) -> Result<()> {
    if let Some(bad) = lengths.iter().find(|&&l| !(l > 0.0 && l.is_finite())) {
        return Err(Error::Parameter(format!("lengths must be positive and finite, got {bad}")));
    }
    Ok(())
}

fn check_dim(m: usize) -> Result<()> {
    if m == 0 || m > 3 {
        return Err(Error::Unsupported(format!("dimension must be 1..=3, got {m}")));
    }
    Ok(())
}

/// Arguments of `E₁` and `Γ(m/2, ·)` beyond this are dropped; both terms are
/// then below `1e-17`.
const SPLIT_CUTOFF: f64 = 40.0;

/// `ζ'(0)` of the flat torus `R^m / diag(L₁,…,L_m)Z^m`, whose spectrum is
/// `4π² Σ (k_i/L_i)²`, `k ∈ Z^m`.
pub fn epstein_zeta_prime0(periods: &[f64]) -> Result<f64> {
    check_dim(periods.len())?;
    check_lengths(periods)?;
    let m = periods.len() as f64;
    let volume: f64 = periods.iter().product();
    epstein_zeta_prime0_split(periods, volume.powf(2.0 / m) / (4.0 * PI))
}

/// As [`epstein_zeta_prime0`], splitting the heat-trace integral at `t0`.
/// The result does not depend on `t0`.
pub fn epstein_zeta_prime0_split(periods: &[f64], t0: f64) -> Result<f64> {
    check_dim(periods.len())?;
    check_lengths(periods)?;
    if !(t0 > 0.0 && t0.is_finite()) {
        return Err(Error::Parameter(format!("split point must be positive, got {t0}")));
    }
    let m = periods.len();
    let volume: f64 = periods.iter().product();

    // spectral side: Σ' E₁(λ t0)
    let spectral_radius: Vec<i64> = periods
        .iter()
        .map(|&l| (l * (SPLIT_CUTOFF / (4.0 * PI * PI * t0)).sqrt()).ceil() as i64)
        .collect();
    let mut spectral = 0.0;
    for k in lattice_box(&spectral_radius) {
        let x = 4.0 * PI * PI * t0 * k.iter().zip(periods).map(|(&k, &l)| (k as f64 / l).powi(2)).sum::<f64>();
        if x > 0.0 && x <= SPLIT_CUTOFF {
            spectral += exp_integral_e1(x)?;
        }
    }

    // geometric side: Σ' (4/μ)^{m/2} Γ(m/2, μ/4t0)
    let geometric_radius: Vec<i64> = periods
        .iter()
        .map(|&l| ((4.0 * t0 * SPLIT_CUTOFF).sqrt() / l).ceil() as i64)
        .collect();
    let mut geometric = 0.0;
    for n in lattice_box(&geometric_radius) {
        let mu: f64 = n.iter().zip(periods).map(|(&n, &l)| (n as f64 * l).powi(2)).sum();
        let x = mu / (4.0 * t0);
        if x > 0.0 && x <= SPLIT_CUTOFF {
            geometric += (4.0 / mu).powf(m as f64 / 2.0) * upper_gamma_half(m as u32, x)?;
        }
    }
    let half_m = m as f64 / 2.0;
    Ok(-EULER_GAMMA - t0.ln() + spectral - volume * (4.0 * PI * t0).powf(-half_m) / half_m
        + volume * (4.0 * PI).powf(-half_m) * geometric)
}

fn lattice_box(radius: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for &r in radius {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (-r..=r).map(move |k| {
                    let mut p = prefix.clone();
                    p.push(k);
                    p
                })
            })
            .collect();
    }
    out
}

/// Closed form for two-dimensional tori: `det* = L₂² |η(iL₂/L₁)|⁴`.
pub fn eta_zeta_prime0(periods: &[f64]) -> Result<f64> {
    check_lengths(periods)?;
    match *periods {
        [l1, l2] => {
            let eta = dedekind_eta_imag(l2 / l1)?;
            Ok(-(2.0 * l2.ln() + 4.0 * eta.ln()))
        }
        [l] => Ok(-2.0 * l.ln()),
        _ => Err(Error::Unsupported("the eta closed form covers tori of dimension 1 and 2".into())),
    }
}

/// `ζ'_α(0)` of the Dirichlet interval `[0, α]`.
pub fn zeta_prime0_interval(alpha: f64, convention: ZetaConvention) -> Result<f64> {
    check_lengths(&[alpha])?;
    Ok(-convention.one_dim_factor() * (2.0 * alpha).ln())
}

/// Which torus evaluator feeds the inversion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TorusRoute {
    IncompleteGamma,
    Eta,
}

/// `ζ'(0)` of the Dirichlet orthotope `α₁ × … × α_m` (each eigenvalue
/// `π² Σ (k_i/α_i)²`, `k_i ≥ 1`, counted once), by inverting the torus
/// relation over all faces.
pub fn zeta_prime0_orthotope(alphas: &[f64], convention: ZetaConvention) -> Result<f64> {
    zeta_prime0_orthotope_via(alphas, convention, TorusRoute::IncompleteGamma)
}

pub fn zeta_prime0_orthotope_via(alphas: &[f64], convention: ZetaConvention, route: TorusRoute) -> Result<f64> {
    check_dim(alphas.len())?;
    check_lengths(alphas)?;
    if alphas.len() == 1 {
        return zeta_prime0_interval(alphas[0], convention);
    }
    let torus = |periods: &[f64]| match route {
        TorusRoute::IncompleteGamma => epstein_zeta_prime0(periods),
        TorusRoute::Eta => eta_zeta_prime0(periods),
    };
    let mut err = None;
    let table = SubsetTable::from_fn(alphas.len(), |mask| {
        let periods = face_periods(alphas, mask);
        torus(&periods).map(|v| 1.0 + v).unwrap_or_else(|e| {
            err = Some(e);
            f64::NAN
        })
    })?;
    if let Some(e) = err {
        return Err(e);
    }
    let weighted = invert(&table);
    let full = (1u32 << alphas.len()) - 1;
    Ok(weighted.get(full) / f64::from(1u32 << alphas.len()))
}

/// Periods `2α_i` of the torus covering the face selected by `mask`.
fn face_periods(alphas: &[f64], mask: u32) -> Vec<f64> {
    (0..alphas.len())
        .filter(|i| mask & (1 << i) != 0)
        .map(|i| 2.0 * alphas[i])
        .collect()
}

/// `ζ'_Δ(0)` for the right isosceles triangle with unit legs, from
/// `ζ_{1×1}(s) = 2ζ_Δ(s) + 2^{−s}ζ_1(s)`.
pub fn zeta_prime0_triangle(convention: ZetaConvention) -> Result<f64> {
    let square = zeta_prime0_orthotope(&[1.0, 1.0], ZetaConvention::A)?;
    Ok((square + triangle_diagonal_term(convention)) / 2.0)
}

/// `−d/ds [2^{−s}ζ_1(s)]` at `s = 0`: `½ log 2` under A, `log 2` under B.
pub fn triangle_diagonal_term(convention: ZetaConvention) -> f64 {
    let c = convention.one_dim_factor();
    // ζ_1(0) = c·ζ(0), ζ'_1(0) = −c log 2
    -(-LN_2 * c * RIEMANN_ZETA_0 - c * LN_2)
}

/// `det*Δ = exp(−ζ'(0))`.
pub fn det_star(domain: &DomainSpec, convention: ZetaConvention) -> Result<f64> {
    let zp = match domain.kind {
        DomainKind::Interval => zeta_prime0_interval(domain.lengths[0], convention)?,
        DomainKind::Orthotope => zeta_prime0_orthotope(&domain.lengths, convention)?,
        DomainKind::Torus => epstein_zeta_prime0(&domain.lengths)?,
        DomainKind::Triangle => zeta_prime0_triangle(convention)?,
    };
    Ok((-zp).exp())
}

/// Truncated `π^{−2s} Σ (k₁² + k₂²)^{−s}` over `1 ≤ k_i ≤ cutoff`, restricted
/// to `k₁ > k₂` when `triangle`; `s > 1`.
pub fn dirichlet_zeta_direct(s: f64, cutoff: u32, triangle: bool) -> Result<f64> {
    if s <= 1.0 {
        return Err(Error::Domain(format!("direct sums need s > 1, got {s}")));
    }
    let mut acc = crate::sum::CompensatedSum::new();
    for k1 in 1..=cutoff as u64 {
        for k2 in 1..=cutoff as u64 {
            if triangle && k1 <= k2 {
                continue;
            }
            acc.add(((k1 * k1 + k2 * k2) as f64).powf(-s));
        }
    }
    Ok(PI.powf(-2.0 * s) * acc.value())
}

/// Truncated `ζ_1(s)` under the given convention.
pub fn interval_zeta_direct(s: f64, cutoff: u32, convention: ZetaConvention) -> Result<f64> {
    if s <= 0.5 {
        return Err(Error::Domain(format!("direct sums need s > 1/2, got {s}")));
    }
    let sum: crate::sum::CompensatedSum = (1..=cutoff).map(|k| (k as f64).powf(-2.0 * s)).collect();
    Ok(convention.one_dim_factor() * PI.powf(-2.0 * s) * sum.value())
}
