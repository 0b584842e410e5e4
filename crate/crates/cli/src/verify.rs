use crate::obj;
use crate::output::num;
use latdet::combinatorics::{forward, invert, SubsetTable};
use latdet::exact::{
    forest_polynomial, grid_graph, matrix_tree, qad_graph, tau_qad_product, verify_qad_identity,
    verify_torus_grid_identity, QadRule,
};
use latdet::spectra::{check_theta_decomposition, spectral_sum_with, LatticeSpec};
use latdet::specfun::QuadratureSpec;
use latdet::{asympt, Exec, PrecisionMode, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Target {
    Theta,
    Inversion,
    Theorem2,
    QadIdentity,
    Forests,
}

pub struct Case {
    pub name: String,
    pub passed: bool,
    pub witness: Value,
}

const SEED: u64 = 0x1a77_1ce5;

pub fn run(target: Target, exec: Exec) -> Result<Vec<Case>> {
    match target {
        Target::Theta => theta(),
        Target::Inversion => Ok(inversion()),
        Target::Theorem2 => theorem2(),
        Target::QadIdentity => qad_identity(exec),
        Target::Forests => forests(exec),
    }
}

fn theta() -> Result<Vec<Case>> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    (0..50)
        .map(|i| {
            let d = rng.gen_range(1..=3);
            let sides: Vec<usize> = (0..d).map(|_| rng.gen_range(1..=8)).collect();
            let t = rng.gen_range(0.05..=5.0);
            let r = check_theta_decomposition(&sides, t)?;
            Ok(Case {
                name: format!("case {i}: sides {sides:?}, t {t:.4}"),
                passed: r.max_relative() <= 1e-12,
                witness: obj! {
                    "theta_lattice" => num(r.theta_lattice),
                    "residual_star" => num(r.residual_star),
                    "residual_torus" => num(r.residual_torus),
                },
            })
        })
        .collect()
}

fn inversion() -> Vec<Case> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    (0..200)
        .map(|i| {
            let l = rng.gen_range(0..=8);
            let g = SubsetTable::from_fn(l, |_| {
                BigRational::new(BigInt::from(rng.gen_range(-1000i64..=1000)), BigInt::from(rng.gen_range(1i64..=60)))
            })
            .expect("l <= 8");
            let back = invert(&forward(&g));
            let forth = forward(&invert(&g));
            Case {
                name: format!("table {i}: l = {l}"),
                passed: back == g && forth == g,
                witness: obj! { "entries" => 1u64 << l },
            }
        })
        .collect()
}

fn theorem2() -> Result<Vec<Case>> {
    let mut cases = Vec::new();
    for n1 in 1..=4 {
        for n2 in 1..=4 {
            let c = verify_torus_grid_identity(n1, n2)?;
            cases.push(Case {
                name: format!("({n1},{n2})"),
                passed: c.holds(),
                witness: obj! { "torus" => c.lhs.to_string(), "grid_side" => c.rhs.to_string() },
            });
        }
    }
    Ok(cases)
}

fn qad_identity(exec: Exec) -> Result<Vec<Case>> {
    (1..=12)
        .map(|n| {
            let c = verify_qad_identity(n)?;
            let count = matrix_tree(&qad_graph(n, QadRule::Corrected)?)?;
            let product = tau_qad_product(n, PrecisionMode::Standard, exec)?.value;
            let rel = (product.exp() / count.to_f64().unwrap_or(f64::NAN) - 1.0).abs();
            Ok(Case {
                name: format!("n = {n}"),
                passed: c.holds() && rel <= 1e-9,
                witness: obj! {
                    "grid" => c.lhs.to_string(),
                    "qad_side" => c.rhs.to_string(),
                    "tau_qad" => count.to_string(),
                    "product_relative_error" => num(rel),
                },
            })
        })
        .collect()
}

fn forests(exec: Exec) -> Result<Vec<Case>> {
    let mut cases = Vec::new();
    let p = forest_polynomial(&grid_graph(&[2, 2])?)?;
    let expected: Vec<BigInt> = [0, 16, 20, 8, 1].iter().map(|&c| BigInt::from(c)).collect();
    let ratio = p.ratio(2)?;
    let s1 = spectral_sum_with(&LatticeSpec::grid(&[2, 2])?, 1, exec)?;
    cases.push(Case {
        name: "grid (2,2) polynomial".into(),
        passed: p.coeffs() == expected.as_slice()
            && ratio == BigRational::new(5.into(), 4.into())
            && s1 == 1.25,
        witness: obj! {
            "coefficients" => p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "n2_over_n1" => ratio.to_string(),
            "spectral_sum" => num(s1),
        },
    });
    for sides in [vec![3, 3], vec![2, 2, 3], vec![3, 4], vec![2, 6], vec![12]] {
        let g = grid_graph(&sides)?;
        let p = forest_polynomial(&g)?;
        let spec = LatticeSpec::grid(&sides)?;
        let s1 = spectral_sum_with(&spec, 1, exec)?;
        let s2 = spectral_sum_with(&spec, 2, exec)?;
        let r2 = to_f64(&p.ratio(2)?);
        let r3 = to_f64(&p.ratio(3)?);
        let predicted = 0.5 * (r2 * r2 - s2);
        let err = ((r3 - predicted) / r3).abs().max(((r2 - s1) / r2).abs());
        cases.push(Case {
            name: format!("grid {sides:?} N3 relation"),
            passed: err <= 1e-12,
            witness: obj! { "n3_over_n1" => num(r3), "predicted" => num(predicted), "relative_error" => num(err) },
        });
    }
    let unit = latdet::spectra::OrthotopeSpec::new(vec![1, 1, 1])?;
    let quad = QuadratureSpec::default();
    let mut ratios = Vec::new();
    for n in [32, 64] {
        let s1 = spectral_sum_with(&LatticeSpec::grid(&[n, n, n])?, 1, exec)?;
        ratios.push(s1 / asympt::forest_prediction(&unit, n, 2, &quad)?);
    }
    cases.push(Case {
        name: "d = 3 ratio to (1/2) W3 n^3 at n = 32, 64".into(),
        passed: (0.8..=1.2).contains(&ratios[0]) && (ratios[1] - 1.0).abs() < (ratios[0] - 1.0).abs(),
        witness: obj! { "n32" => num(ratios[0]), "n64" => num(ratios[1]) },
    });
    Ok(cases)
}

fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}
