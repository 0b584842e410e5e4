//! Adaptive Gauss–Kronrod quadrature and the semi-infinite `dt/t` engine.

use super::series::TaylorSeries;
use crate::error::{Error, Result};
use std::cmp::Ordering;
use std::collections::BinaryHeap;

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_600_025_134_622,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// Value and error estimate of a quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
}

/// Controls for [`integrate_frullani`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    /// Target absolute error.
    pub abs_tol: f64,
    /// Boundary between the series-hooked region `(0, split]` and the tail.
    pub split_point: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            split_point: 1.0,
            max_subdivisions: 4000,
        }
    }
}

impl QuadratureSpec {
    pub fn with_tolerance(abs_tol: f64) -> Self {
        Self {
            abs_tol,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0) {
            return Err(Error::Parameter(format!("abs_tol must be > 0, got {}", self.abs_tol)));
        }
        if !(self.split_point > 0.0) {
            return Err(Error::Parameter(format!(
                "split_point must be > 0, got {}",
                self.split_point
            )));
        }
        if self.max_subdivisions == 0 {
            return Err(Error::Parameter("max_subdivisions must be positive".into()));
        }
        Ok(())
    }
}

/// Below this `t` the integrand's own Taylor expansion replaces `g(t)/t`.
pub const SMALL_T_HOOK: f64 = 1e-3;

/// An integrand `g` for `∫₀^∞ g(t) dt/t`, with `g(t) = O(t)` at the origin.
pub struct FrullaniIntegrand<'a> {
    g: Box<dyn Fn(f64) -> f64 + Send + Sync + 'a>,
    small_t: TaylorSeries,
}

impl<'a> FrullaniIntegrand<'a> {
    pub fn new(g: impl Fn(f64) -> f64 + Send + Sync + 'a, small_t: TaylorSeries) -> Self {
        Self {
            g: Box::new(g),
            small_t,
        }
    }

    pub fn zero() -> Self {
        Self::new(|_| 0.0, TaylorSeries::zero())
    }

    pub fn eval(&self, t: f64) -> f64 {
        (self.g)(t)
    }

    pub fn small_t(&self) -> &TaylorSeries {
        &self.small_t
    }

    /// `a·self + b·other`.
    pub fn combine(self, a: f64, other: FrullaniIntegrand<'a>, b: f64) -> FrullaniIntegrand<'a> {
        let series = self.small_t.scale(a) + other.small_t.scale(b);
        let (f, g) = (self.g, other.g);
        FrullaniIntegrand::new(move |t| a * f(t) + b * g(t), series)
    }

    fn over_t(&self, t: f64) -> f64 {
        if t < SMALL_T_HOOK {
            self.small_t.eval_over_t(t)
        } else {
            (self.g)(t) / t
        }
    }
}

fn gk21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut resg = 0.0;
    let mut resk = fc * WGK[10];
    let mut resabs = resk.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for (j, wg) in WG.iter().enumerate() {
        let jtw = 2 * j + 1;
        let absc = half * XGK[jtw];
        let f1 = f(center - absc);
        let f2 = f(center + absc);
        fv1[jtw] = f1;
        fv2[jtw] = f2;
        resg += wg * (f1 + f2);
        resk += WGK[jtw] * (f1 + f2);
        resabs += WGK[jtw] * (f1.abs() + f2.abs());
    }
    for j in 0..5 {
        let jtwm1 = 2 * j;
        let absc = half * XGK[jtwm1];
        let f1 = f(center - absc);
        let f2 = f(center + absc);
        fv1[jtwm1] = f1;
        fv2[jtwm1] = f2;
        resk += WGK[jtwm1] * (f1 + f2);
        resabs += WGK[jtwm1] * (f1.abs() + f2.abs());
    }
    let reskh = 0.5 * resk;
    let mut resasc = WGK[10] * (fc - reskh).abs();
    for j in 0..10 {
        resasc += WGK[j] * ((fv1[j] - reskh).abs() + (fv2[j] - reskh).abs());
    }
    let result = resk * half;
    let resabs = resabs * half.abs();
    let resasc = resasc * half.abs();
    let mut err = ((resk - resg) * half).abs();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    (result, err)
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Globally adaptive Gauss–Kronrod (21-point) quadrature on `[a, b]`.
pub fn integrate_adaptive<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    max_subdivisions: usize,
) -> Result<QuadResult> {
    let (v, e) = gk21(&f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Panel { a, b, value: v, error: e });
    let mut total_err = e;
    let mut splits = 0;
    while total_err > abs_tol && splits < max_subdivisions {
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Interval exhausted at machine resolution.
            heap.push(Panel { error: 0.0, ..worst });
            total_err = heap.iter().map(|p| p.error).sum();
            continue;
        }
        let (v1, e1) = gk21(&f, worst.a, mid);
        let (v2, e2) = gk21(&f, mid, worst.b);
        heap.push(Panel { a: worst.a, b: mid, value: v1, error: e1 });
        heap.push(Panel { a: mid, b: worst.b, value: v2, error: e2 });
        splits += 1;
        total_err = heap.iter().map(|p| p.error).sum();
    }
    let mut panels = heap.into_vec();
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    let value: f64 = panels.iter().map(|p| p.value).sum();
    if !value.is_finite() || total_err > abs_tol {
        return Err(Error::NonConvergence {
            value,
            error: total_err,
            tolerance: abs_tol,
        });
    }
    Ok(QuadResult { value, error: total_err })
}

/// `∫₀^∞ g(t) dt/t`.
///
/// On `(0, split]` the integrand `g(t)/t` is integrated directly, switching
/// to the descriptor's Taylor expansion below [`SMALL_T_HOOK`]. The tail is
/// mapped to `u ∈ (0, 1]` by `t = split/u²`, which turns the algebraic decay
/// `t^{-k/2}` of the Bessel-type integrands into a smooth integrand in `u`.
pub fn integrate_frullani(g: &FrullaniIntegrand<'_>, spec: &QuadratureSpec) -> Result<QuadResult> {
    spec.validate()?;
    if g.small_t().coeff(0).abs() > 1e-14 {
        return Err(Error::Domain(format!(
            "integrand must vanish at t = 0 (constant term {})",
            g.small_t().coeff(0)
        )));
    }
    let s = spec.split_point;
    let tol = 0.5 * spec.abs_tol;
    let head = integrate_adaptive(|t| g.over_t(t), 0.0, s, tol, spec.max_subdivisions);
    let tail = integrate_adaptive(
        |u| {
            let t = s / (u * u);
            if t.is_finite() {
                2.0 * g.eval(t) / u
            } else {
                0.0
            }
        },
        0.0,
        1.0,
        tol,
        spec.max_subdivisions,
    );
    match (head, tail) {
        (Ok(h), Ok(t)) => Ok(QuadResult {
            value: h.value + t.value,
            error: h.error + t.error,
        }),
        (h, t) => {
            let (hv, he) = quad_parts(&h);
            let (tv, te) = quad_parts(&t);
            Err(Error::NonConvergence {
                value: hv + tv,
                error: he + te,
                tolerance: spec.abs_tol,
            })
        }
    }
}

fn quad_parts(r: &Result<QuadResult>) -> (f64, f64) {
    match r {
        Ok(q) => (q.value, q.error),
        Err(Error::NonConvergence { value, error, .. }) => (*value, *error),
        Err(_) => (f64::NAN, f64::INFINITY),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::bessel::i0_scaled_unchecked;

    fn frullani_exp(a: f64, b: f64) -> FrullaniIntegrand<'static> {
        FrullaniIntegrand::new(
            move |t| (-a * t).exp() - (-b * t).exp(),
            TaylorSeries::exp_neg(a) - TaylorSeries::exp_neg(b),
        )
    }

    #[test]
    fn finite_interval_polynomial_exact() {
        let r = integrate_adaptive(|x| x * x * x - 2.0 * x, 0.0, 2.0, 1e-13, 10).unwrap();
        assert!((r.value - 0.0).abs() < 1e-13);
    }

    #[test]
    fn frullani_log_four() {
        let r = integrate_frullani(&frullani_exp(1.0, 4.0), &QuadratureSpec::default()).unwrap();
        assert!((r.value - 4f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn frullani_family() {
        let spec = QuadratureSpec::default();
        for k in 1..=6 {
            let r = integrate_frullani(&frullani_exp(1.0, 4.0 * k as f64), &spec).unwrap();
            assert!((r.value - (4.0 * k as f64).ln()).abs() <= spec.abs_tol, "k = {k}");
        }
    }

    #[test]
    fn zero_integrand() {
        let r = integrate_frullani(&FrullaniIntegrand::zero(), &QuadratureSpec::default()).unwrap();
        assert_eq!(r.value, 0.0);
    }

    #[test]
    fn lattice_constant_in_one_dimension_vanishes() {
        let g = FrullaniIntegrand::new(
            |t| (-t).exp() - i0_scaled_unchecked(2.0 * t),
            TaylorSeries::exp_neg(1.0) - TaylorSeries::exp_neg(2.0) * TaylorSeries::bessel_i0(2.0),
        );
        let r = integrate_frullani(&g, &QuadratureSpec::with_tolerance(1e-10)).unwrap();
        assert!(r.value.abs() < 1e-8, "{}", r.value);
    }

    #[test]
    fn rejects_nonvanishing_integrand() {
        let g = FrullaniIntegrand::new(|t| (-t).exp(), TaylorSeries::exp_neg(1.0));
        assert!(matches!(
            integrate_frullani(&g, &QuadratureSpec::default()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn reports_non_convergence() {
        let spec = QuadratureSpec {
            abs_tol: 1e-15,
            split_point: 1.0,
            max_subdivisions: 1,
        };
        let g = FrullaniIntegrand::new(
            |t| (-t).exp() - i0_scaled_unchecked(2.0 * t).powi(3),
            TaylorSeries::exp_neg(1.0) - (TaylorSeries::exp_neg(2.0) * TaylorSeries::bessel_i0(2.0)).powi(3),
        );
        match integrate_frullani(&g, &spec) {
            Err(Error::NonConvergence { error, .. }) => assert!(error > 0.0),
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }

    #[test]
    fn invalid_spec() {
        let spec = QuadratureSpec {
            abs_tol: 0.0,
            ..QuadratureSpec::default()
        };
        assert!(integrate_frullani(&FrullaniIntegrand::zero(), &spec).is_err());
    }
}
