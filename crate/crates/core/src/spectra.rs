//! Closed-form Laplacian spectra of grid lattices `L(n_1,…,n_d)` and discrete
//! tori `T(2n_1,…,2n_d)`, their heat traces, and streamed spectral sums.
//!
//! Both spectra are sums of one-dimensional values `4 sin²(πk / 2n)`, with
//! `k < n` on a grid axis and `k < 2n` on a torus axis. Multi-indices are
//! visited in lexicographic order (last axis fastest) and reduced with the
//! deterministic chunked reduction of [`crate::sum`].

use crate::error::{Error, Result};
use crate::precision::ext;
use crate::sum::{CompensatedSum, Exec};
use serde::Serialize;
use std::f64::consts::PI;

/// Hard ceiling on streamed lattice sizes.
pub const MAX_STREAMED_VERTICES: usize = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LatticeKind {
    Grid,
    Torus,
}

/// A grid lattice, or a torus `T(2n_1,…,2n_d)` stored by its half-sides `n_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeSpec {
    kind: LatticeKind,
    sides: Vec<usize>,
}

impl LatticeSpec {
    pub fn new(kind: LatticeKind, sides: Vec<usize>) -> Result<Self> {
        if sides.is_empty() {
            return Err(Error::Parameter("lattice needs at least one side".into()));
        }
        if let Some(bad) = sides.iter().find(|&&n| n == 0) {
            return Err(Error::Parameter(format!("lattice sides must be >= 1, got {bad}")));
        }
        let spec = Self { kind, sides };
        let count = spec
            .axis_lengths()
            .try_fold(1usize, |acc, n| acc.checked_mul(n))
            .filter(|&c| c <= MAX_STREAMED_VERTICES);
        if count.is_none() {
            return Err(Error::Size(format!(
                "lattice has more than {MAX_STREAMED_VERTICES} vertices"
            )));
        }
        Ok(spec)
    }

    pub fn grid(sides: &[usize]) -> Result<Self> {
        Self::new(LatticeKind::Grid, sides.to_vec())
    }

    /// `T(2n_1,…,2n_d)` from the half-sides `n_i`.
    pub fn torus(half_sides: &[usize]) -> Result<Self> {
        Self::new(LatticeKind::Torus, half_sides.to_vec())
    }

    pub fn kind(&self) -> LatticeKind {
        self.kind
    }

    pub fn sides(&self) -> &[usize] {
        &self.sides
    }

    pub fn dim(&self) -> usize {
        self.sides.len()
    }

    fn axis_lengths(&self) -> impl Iterator<Item = usize> + '_ {
        let factor = match self.kind {
            LatticeKind::Grid => 1,
            LatticeKind::Torus => 2,
        };
        self.sides.iter().map(move |&n| factor * n)
    }

    pub fn vertex_count(&self) -> usize {
        self.axis_lengths().product()
    }

    fn axis_values(&self) -> Vec<Vec<f64>> {
        self.sides
            .iter()
            .zip(self.axis_lengths())
            .map(|(&n, len)| axis_values(n, 0, len))
            .collect()
    }

    /// All `(multi-index, eigenvalue)` pairs in lexicographic order.
    pub fn eigenvalues(&self) -> Eigenvalues {
        Eigenvalues {
            axes: self.axis_values(),
            index: vec![0; self.dim()],
            done: false,
        }
    }
}

/// `4 sin²(πk / 2n)`. Past the quarter period the value is taken as
/// `2 + 2cos(π(1 − k/n))`, which has no cancellation there and is exact at
/// `k/n = 1/2` and `1`.
pub(crate) fn four_sin_sq(k: usize, n: usize) -> f64 {
    let period = 2 * n;
    let k = k % period;
    let k = k.min(period - k);
    if 2 * k < n {
        let s = (PI * k as f64 / period as f64).sin();
        4.0 * s * s
    } else {
        2.0 + 2.0 * (PI * (n - k) as f64 / n as f64).cos()
    }
}

/// `4 sin²(πk / 2n)` for `k in start..end`.
fn axis_values(n: usize, start: usize, end: usize) -> Vec<f64> {
    (start..end).map(|k| four_sin_sq(k, n)).collect()
}

/// Streaming iterator over a lattice spectrum.
pub struct Eigenvalues {
    axes: Vec<Vec<f64>>,
    index: Vec<usize>,
    done: bool,
}

impl Iterator for Eigenvalues {
    type Item = (Vec<usize>, f64);

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let lambda = self.index.iter().zip(&self.axes).map(|(&k, a)| a[k]).sum();
        let item = (self.index.clone(), lambda);
        self.done = !advance(&mut self.index, &self.axes);
        Some(item)
    }
}

fn advance(index: &mut [usize], axes: &[Vec<f64>]) -> bool {
    for i in (0..index.len()).rev() {
        index[i] += 1;
        if index[i] < axes[i].len() {
            return true;
        }
        index[i] = 0;
    }
    false
}

fn decode(mut linear: usize, axes: &[Vec<f64>]) -> Vec<usize> {
    let mut index = vec![0; axes.len()];
    for i in (0..axes.len()).rev() {
        let len = axes[i].len();
        index[i] = linear % len;
        linear /= len;
    }
    index
}

/// Streams `Σ f(λ)` over the product spectrum of `axes`, optionally skipping
/// the linear index 0 (the zero mode when every axis starts at `k = 0`).
fn reduce_product<F>(axes: &[Vec<f64>], skip_first: bool, exec: Exec, f: F) -> f64
where
    F: Fn(f64) -> f64 + Sync + Send,
{
    if axes.is_empty() {
        return if skip_first { 0.0 } else { f(0.0) };
    }
    let len: usize = axes.iter().map(Vec::len).product();
    if len == 0 {
        return 0.0;
    }
    exec.sum_chunks(len, |start, end| {
        let mut acc = CompensatedSum::new();
        let mut index = decode(start, axes);
        for linear in start..end {
            if !(skip_first && linear == 0) {
                let lambda: f64 = index.iter().zip(axes).map(|(&k, a)| a[k]).sum();
                acc.add(f(lambda));
            }
            advance(&mut index, axes);
        }
        acc
    })
}

fn check_t(t: f64) -> Result<()> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::Domain(format!("heat-trace time must be finite and > 0, got {t}")));
    }
    Ok(())
}

/// Heat trace `θ(t) = Σ_k e^{-λ_k t}`.
pub fn theta(spec: &LatticeSpec, t: f64) -> Result<f64> {
    theta_with(spec, t, Exec::default())
}

pub fn theta_with(spec: &LatticeSpec, t: f64, exec: Exec) -> Result<f64> {
    check_t(t)?;
    Ok(reduce_product(&spec.axis_values(), false, exec, |l| (-l * t).exp()))
}

/// Interior heat trace: `k_i` ranges over `1..n_i`. The empty side list
/// gives 1.
pub fn theta_star(sides: &[usize], t: f64) -> Result<f64> {
    theta_star_with(sides, t, Exec::default())
}

pub fn theta_star_with(sides: &[usize], t: f64, exec: Exec) -> Result<f64> {
    check_t(t)?;
    if let Some(bad) = sides.iter().find(|&&n| n == 0) {
        return Err(Error::Parameter(format!("sides must be >= 1, got {bad}")));
    }
    let axes: Vec<Vec<f64>> = sides.iter().map(|&n| axis_values(n, 1, n)).collect();
    Ok(reduce_product(&axes, false, exec, |l| (-l * t).exp()))
}

/// Absolute residuals of the two heat-trace decompositions of a grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThetaResiduals {
    pub theta_lattice: f64,
    /// `|θ_L − Σ_{S ⊆ axes} θ*_S|`.
    pub residual_star: f64,
    /// `|θ_L − 2^{-d} Σ_{S} (1 − e^{-4t})^{d−|S|} θ_{T,S}|`.
    pub residual_torus: f64,
}

impl ThetaResiduals {
    pub fn max_relative(&self) -> f64 {
        self.residual_star.max(self.residual_torus) / self.theta_lattice
    }
}

/// Evaluates the grid heat trace directly and through the interior-face and
/// torus decompositions, returning both residuals.
pub fn check_theta_decomposition(sides: &[usize], t: f64) -> Result<ThetaResiduals> {
    check_t(t)?;
    let d = sides.len();
    if d == 0 || d > 4 {
        return Err(Error::Size(format!("decomposition check needs 1 <= d <= 4, got {d}")));
    }
    if let Some(bad) = sides.iter().find(|&&n| n == 0 || n > 8) {
        return Err(Error::Size(format!("decomposition check needs 1 <= n_i <= 8, got {bad}")));
    }
    let exec = Exec::Sequential;
    let theta_lattice = theta_with(&LatticeSpec::grid(sides)?, t, exec)?;
    let mut star = CompensatedSum::new();
    let mut torus = CompensatedSum::new();
    let damp = -(-4.0 * t).exp_m1();
    for mask in 0u32..(1 << d) {
        let face: Vec<usize> = (0..d).filter(|i| mask & (1 << i) != 0).map(|i| sides[i]).collect();
        star.add(theta_star_with(&face, t, exec)?);
        let theta_t = if face.is_empty() {
            1.0
        } else {
            theta_with(&LatticeSpec::torus(&face)?, t, exec)?
        };
        torus.add(damp.powi((d - face.len()) as i32) * theta_t);
    }
    let torus_side = torus.value() / (1u64 << d) as f64;
    Ok(ThetaResiduals {
        theta_lattice,
        residual_star: (theta_lattice - star.value()).abs(),
        residual_torus: (theta_lattice - torus_side).abs(),
    })
}

/// `log det*Δ = Σ_{λ≠0} log λ`.
pub fn log_det_star(spec: &LatticeSpec) -> f64 {
    log_det_star_with(spec, Exec::default())
}

pub fn log_det_star_with(spec: &LatticeSpec, exec: Exec) -> f64 {
    reduce_product(&spec.axis_values(), true, exec, f64::ln)
}

/// `log det*Δ` accumulated in 128-bit arithmetic; returns the rounded value
/// and its full decimal rendering.
pub fn log_det_star_extended(spec: &LatticeSpec, exec: Exec) -> (f64, String) {
    use astro_float::BigFloat;
    let mut cc = ext::consts();
    let axes: Vec<Vec<BigFloat>> = spec
        .sides
        .iter()
        .zip(spec.axis_lengths())
        .map(|(&n, len)| ext::four_sin_sq(n, len, &mut cc))
        .collect();
    let first_len = axes[0].len();
    let rest_len: usize = axes[1..].iter().map(Vec::len).product();
    let rows = exec.map_range(first_len, |k0| {
        let mut cc = ext::consts();
        let mut acc = ext::zero();
        let mut index = vec![0usize; axes.len() - 1];
        for j in 0..rest_len {
            if !(k0 == 0 && j == 0) {
                let mut lambda = axes[0][k0].clone();
                for (i, &k) in index.iter().enumerate() {
                    lambda = lambda.add(&axes[i + 1][k], ext::BITS, ext::RM);
                }
                acc = acc.add(&lambda.ln(ext::BITS, ext::RM, &mut cc), ext::BITS, ext::RM);
            }
            for i in (0..index.len()).rev() {
                index[i] += 1;
                if index[i] < axes[i + 1].len() {
                    break;
                }
                index[i] = 0;
            }
        }
        acc
    });
    let total = rows
        .iter()
        .fold(ext::zero(), |acc, r| acc.add(r, ext::BITS, ext::RM));
    (ext::to_f64(&total, &mut cc), ext::to_decimal(&total, &mut cc))
}

/// `Σ_{λ≠0} λ^{-p}` for `p ∈ {1, 2}`.
pub fn spectral_sum(spec: &LatticeSpec, p: u32) -> Result<f64> {
    spectral_sum_with(spec, p, Exec::default())
}

pub fn spectral_sum_with(spec: &LatticeSpec, p: u32, exec: Exec) -> Result<f64> {
    let axes = spec.axis_values();
    match p {
        1 => Ok(reduce_product(&axes, true, exec, |l| 1.0 / l)),
        2 => Ok(reduce_product(&axes, true, exec, |l| 1.0 / (l * l))),
        _ => Err(Error::Parameter(format!("spectral sum power must be 1 or 2, got {p}"))),
    }
}

/// Side ratios `α_i` of the limiting orthotope `K_d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrthotopeSpec {
    alphas: Vec<u32>,
}

impl OrthotopeSpec {
    pub fn new(alphas: Vec<u32>) -> Result<Self> {
        if alphas.is_empty() {
            return Err(Error::Parameter("orthotope needs at least one side".into()));
        }
        if alphas.contains(&0) {
            return Err(Error::Parameter("orthotope side ratios must be >= 1".into()));
        }
        Ok(Self { alphas })
    }

    pub fn alphas(&self) -> &[u32] {
        &self.alphas
    }

    pub fn dim(&self) -> usize {
        self.alphas.len()
    }

    /// The lattice `L(α_1 n, …, α_d n)`.
    pub fn grid_at(&self, n: usize) -> Result<LatticeSpec> {
        LatticeSpec::grid(&self.alphas.iter().map(|&a| a as usize * n).collect::<Vec<_>>())
    }
}

/// Total volume of the `m`-dimensional faces,
/// `V_m^d = 2^{d−m} Σ_{i_1<…<i_m} ∏ α_{i_q}`.
pub fn face_volume(o: &OrthotopeSpec, m: usize) -> Result<f64> {
    let d = o.dim();
    if m == 0 || m > d {
        return Err(Error::Parameter(format!("face dimension must be in 1..={d}, got {m}")));
    }
    let sum: f64 = (0u32..(1 << d))
        .filter(|mask| mask.count_ones() as usize == m)
        .map(|mask| {
            (0..d)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| o.alphas[i] as f64)
                .product::<f64>()
        })
        .sum();
    Ok(sum * 2f64.powi((d - m) as i32))
}
