//! Asymptotic right-hand sides and residual sweeps.

use super::constants::{boundary_coeff, boundary_verdict_3_1, lattice_constant, watson, BoundaryVerdict};
use crate::combinatorics::binomial;
use crate::error::{Error, Result};
use crate::exact::tau_qad_product;
use crate::precision::PrecisionMode;
use crate::specfun::{
    catalan_constant, i0_scaled_unchecked, integrate_frullani, FrullaniIntegrand, QuadratureSpec,
    TaylorSeries,
};
use crate::spectra::{face_volume, log_det_star_extended, log_det_star_with, OrthotopeSpec};
use crate::sum::Exec;
use crate::zetadet::{zeta_prime0_orthotope, zeta_prime0_triangle, ZetaConvention};
use serde::Serialize;
use std::f64::consts::{LN_2, PI};

/// `Σ_p coefficient·n^p + log_coeff·log n + constant`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremRHS {
    /// `(power, coefficient)` pairs, highest power first; the first is the
    /// bulk term, the rest are boundary terms.
    pub terms: Vec<(u32, f64)>,
    pub log_coeff: f64,
    pub constant: f64,
    pub convention: ZetaConvention,
}

impl TheoremRHS {
    pub fn bulk(&self) -> f64 {
        self.terms[0].1
    }

    pub fn coefficient(&self, power: u32) -> Option<f64> {
        self.terms.iter().find(|(p, _)| *p == power).map(|&(_, c)| c)
    }

    /// Everything except the constant.
    pub fn partial(&self, n: usize) -> f64 {
        let n = n as f64;
        let mut acc = crate::sum::CompensatedSum::new();
        for &(p, c) in &self.terms {
            acc.add(c * n.powi(p as i32));
        }
        acc.add(self.log_coeff * n.ln());
        acc.value()
    }

    pub fn total(&self, n: usize) -> f64 {
        self.partial(n) + self.constant
    }
}

fn check_theorem1_dim(alphas: &OrthotopeSpec) -> Result<u32> {
    let d = alphas.dim() as u32;
    if d > 3 {
        return Err(Error::Unsupported(format!(
            "face determinants are available up to dimension 3, got {d}"
        )));
    }
    Ok(d)
}

/// `Σ_{∅≠S} log det*Δ_{α_S}` over all faces of the orthotope.
pub fn face_determinant_sum(alphas: &OrthotopeSpec, convention: ZetaConvention) -> Result<f64> {
    let d = alphas.dim();
    let mut total = 0.0;
    for mask in 1u32..(1 << d) {
        let face: Vec<f64> = (0..d)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| alphas.alphas()[i] as f64)
            .collect();
        total -= zeta_prime0_orthotope(&face, convention)?;
    }
    Ok(total)
}

/// `2^{−d} Σ_{m=1}^d C(d,m)(−1)^m log 4m`.
pub fn lattice_log_constant(d: u32) -> f64 {
    let sum: f64 = (1..=d)
        .map(|m| {
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            sign * binomial(d, m) as f64 * (4.0 * m as f64).ln()
        })
        .sum();
    sum / f64::from(1u32 << d)
}

/// Right-hand side for `log det*Δ` on `L(α₁n,…,α_dn)`, `d ≤ 3`.
pub fn theorem1_rhs(alphas: &OrthotopeSpec, convention: ZetaConvention, spec: &QuadratureSpec) -> Result<TheoremRHS> {
    let d = check_theorem1_dim(alphas)?;
    let mut terms = vec![(d, lattice_constant(d, spec)?.value * face_volume(alphas, d as usize)?)];
    for m in (1..d).rev() {
        terms.push((m, boundary_coeff(d, m, spec)?.value * face_volume(alphas, m as usize)?));
    }
    Ok(TheoremRHS {
        terms,
        log_coeff: 2.0 - 2f64.powi(1 - d as i32),
        constant: face_determinant_sum(alphas, convention)? + lattice_log_constant(d),
        convention,
    })
}

/// Right-hand side for `log τ(QAD_n)`:
/// `(2G/π)n² − log(2+√2)n − ¾ log n + log det*Δ_Δ + (23/8) log 2`.
pub fn theorem3_rhs(convention: ZetaConvention) -> Result<TheoremRHS> {
    Ok(TheoremRHS {
        terms: vec![(2, 2.0 * catalan_constant() / PI), (1, -(2.0 + 2f64.sqrt()).ln())],
        log_coeff: -0.75,
        constant: -zeta_prime0_triangle(convention)? + 23.0 / 8.0 * LN_2,
        convention,
    })
}

/// The QAD constant implied by the `d = 2` grid expansion and
/// `τ(L(n,n)) = n·2^{n−1}·τ(QAD_n)²`: `log det*Δ_Δ + (13/8) log 2` with the
/// triangle relation of convention A.
pub fn theorem3_constant_from_grid() -> Result<f64> {
    Ok(-zeta_prime0_triangle(ZetaConvention::A)? + 13.0 / 8.0 * LN_2)
}

/// `∫₀^∞ (1 − e^{−2t})^{d−m} e^{−mt} I₀(t)^m dt`.
fn forest_face_integral(d: u32, m: u32, spec: &QuadratureSpec) -> Result<f64> {
    let gap = d - m;
    let g = FrullaniIntegrand::new(
        move |t| t * (-(-2.0 * t).exp_m1()).powi(gap as i32) * i0_scaled_unchecked(t).powi(m as i32),
        TaylorSeries::monomial(1)
            * TaylorSeries::one_minus_exp_neg(2.0).powi(gap)
            * (TaylorSeries::exp_neg(1.0) * TaylorSeries::bessel_i0(1.0)).powi(m),
    );
    Ok(integrate_frullani(&g, spec)?.value)
}

/// Leading terms of `N_k/N_1` as `(power, coefficient)` pairs.
///
/// `d = 3, k = 2`: `(V₃/2)W₃n³`. `d = 4, k = 2`: `(V₄/2)W₄n⁴ − (V₃/8)K n³`
/// with `K = ∫(1−e^{−2t})e^{−3t}I₀(t)³dt`. `d = 4, k = 3`: half the square
/// of the `k = 2` expansion, `(V₄W₄)²/8 n⁸ − V₃V₄W₄K/16 n⁷`; the
/// `Σλ^{−2}` correction is `O(n⁴ log n)`.
pub fn forest_coefficients(alphas: &OrthotopeSpec, k: u32, spec: &QuadratureSpec) -> Result<Vec<(u32, f64)>> {
    let d = alphas.dim() as u32;
    let v = |m: u32| face_volume(alphas, m as usize);
    match (d, k) {
        (3, 2) => Ok(vec![(3, v(3)? / 2.0 * watson(3, spec)?.value)]),
        (4, 2) | (4, 3) => {
            let a = v(4)? / 2.0 * watson(4, spec)?.value;
            let b = v(3)? / 8.0 * forest_face_integral(4, 3, spec)?;
            if k == 2 {
                Ok(vec![(4, a), (3, -b)])
            } else {
                Ok(vec![(8, a * a / 2.0), (7, -a * b)])
            }
        }
        _ => Err(Error::Unsupported(format!(
            "forest asymptotics are available for (d, k) in {{(3,2), (4,2), (4,3)}}, got ({d}, {k})"
        ))),
    }
}

/// Predicted `N_k/N_1` on `L(α₁n,…,α_dn)`.
pub fn forest_prediction(alphas: &OrthotopeSpec, n: usize, k: u32, spec: &QuadratureSpec) -> Result<f64> {
    let n = n as f64;
    Ok(forest_coefficients(alphas, k, spec)?
        .iter()
        .map(|&(p, c)| c * n.powi(p as i32))
        .sum())
}

#[derive(Debug, Clone, PartialEq)]
pub enum SweepTarget {
    /// `log det*Δ` of `L(α₁n,…,α_dn)`.
    Theorem1(OrthotopeSpec),
    /// `log τ(QAD_n)`.
    Theorem3,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRecord {
    pub n: usize,
    pub lhs: f64,
    pub rhs_partial: f64,
    pub residual: f64,
    /// `residual(n) − residual(previous n)`.
    pub residual_delta: Option<f64>,
}

/// A constant the residuals may converge to.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstantCandidate {
    pub label: String,
    pub value: f64,
    /// Last residual minus the candidate.
    pub gap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepReport {
    pub rhs: TheoremRHS,
    pub records: Vec<SweepRecord>,
    pub candidates: Vec<ConstantCandidate>,
    /// Quadrature verdict on the printed `I³₁(0)`, reported with Theorem 1
    /// sweeps.
    pub boundary_verdict: Option<BoundaryVerdict>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepOptions {
    pub convention: ZetaConvention,
    pub precision: PrecisionMode,
    pub exec: Exec,
    pub quadrature: QuadratureSpec,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self {
            convention: ZetaConvention::A,
            precision: PrecisionMode::Standard,
            exec: Exec::default(),
            quadrature: QuadratureSpec::default(),
        }
    }
}

/// Evaluates the left side at each `n`, in parallel, and reports residuals
/// against the right side without its constant, ordered by `n`.
pub fn residual_sweep(target: &SweepTarget, n_list: &[usize], opts: &SweepOptions) -> Result<SweepReport> {
    if n_list.is_empty() {
        return Err(Error::Parameter("n list is empty".into()));
    }
    if n_list.windows(2).any(|w| w[0] >= w[1]) || n_list[0] == 0 {
        return Err(Error::Parameter("n list must be positive and strictly ascending".into()));
    }
    let (rhs, lhs_of): (TheoremRHS, Box<dyn Fn(usize) -> Result<f64> + Sync>) = match target {
        SweepTarget::Theorem1(alphas) => {
            let rhs = theorem1_rhs(alphas, opts.convention, &opts.quadrature)?;
            let alphas = alphas.clone();
            let (precision, exec) = (opts.precision, opts.exec);
            (
                rhs,
                Box::new(move |n| {
                    let grid = alphas.grid_at(n)?;
                    Ok(match precision {
                        PrecisionMode::Standard => log_det_star_with(&grid, exec),
                        PrecisionMode::Extended => log_det_star_extended(&grid, exec).0,
                    })
                }),
            )
        }
        SweepTarget::Theorem3 => {
            let rhs = theorem3_rhs(opts.convention)?;
            let (precision, exec) = (opts.precision, opts.exec);
            (rhs, Box::new(move |n| Ok(tau_qad_product(n, precision, exec)?.value)))
        }
    };
    let lhs: Vec<Result<f64>> = opts.exec.map(n_list, |&n| lhs_of(n));
    let mut records: Vec<SweepRecord> = Vec::with_capacity(n_list.len());
    for (&n, l) in n_list.iter().zip(lhs) {
        let lhs = l?;
        let rhs_partial = rhs.partial(n);
        let residual = lhs - rhs_partial;
        let residual_delta = records.last().map(|r| residual - r.residual);
        records.push(SweepRecord { n, lhs, rhs_partial, residual, residual_delta });
    }
    let last = records.last().map(|r| r.residual).unwrap_or(f64::NAN);
    let mut candidates = Vec::new();
    let mut push = |label: String, value: f64| {
        candidates.push(ConstantCandidate { label, value, gap: last - value });
    };
    let boundary_verdict = match target {
        SweepTarget::Theorem1(alphas) => {
            for conv in ZetaConvention::ALL {
                let c = face_determinant_sum(alphas, conv)? + lattice_log_constant(alphas.dim() as u32);
                push(format!("convention {conv}"), c);
            }
            Some(boundary_verdict_3_1(1e-9, &opts.quadrature)?)
        }
        SweepTarget::Theorem3 => {
            for conv in ZetaConvention::ALL {
                push(format!("convention {conv}, 23/8 log 2"), theorem3_rhs(conv)?.constant);
            }
            push("grid expansion, 13/8 log 2".into(), theorem3_constant_from_grid()?);
            None
        }
    };
    Ok(SweepReport { rhs, records, candidates, boundary_verdict })
}
