use super::algebraic::u_sequence;
use super::graph::{grid_graph, qad_graph, torus_graph, QadRule};
use super::linalg::matrix_tree;
use crate::error::{Error, Result};
use crate::precision::{ext, PrecisionMode};
use crate::spectra::four_sin_sq;
use crate::sum::{CompensatedSum, Exec};
use num_bigint::BigInt;

/// Both sides of an exact identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub lhs: BigInt,
    pub rhs: BigInt,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// `τ(T(2n₁,2n₂)) = 32·n₁·n₂·U_{n₁}²·U_{n₂}²·τ(L(n₁,n₂))⁴`, the left side
/// from the torus graph and the right from the grid and the `U` recurrence.
pub fn verify_torus_grid_identity(n1: usize, n2: usize) -> Result<IdentityCheck> {
    let lhs = matrix_tree(&torus_graph(&[n1, n2])?)?;
    let grid = matrix_tree(&grid_graph(&[n1, n2])?)?;
    let u1 = u_sequence(n1 as u32);
    let u2 = u_sequence(n2 as u32);
    let rhs = BigInt::from(32 * n1 * n2) * &u1 * &u1 * &u2 * &u2 * grid.pow(4);
    Ok(IdentityCheck { lhs, rhs })
}

/// `τ(L(n,n)) = n·2^{n−1}·τ(QAD_n)²`.
pub fn verify_qad_identity(n: usize) -> Result<IdentityCheck> {
    let lhs = matrix_tree(&grid_graph(&[n, n])?)?;
    let qad = matrix_tree(&qad_graph(n, QadRule::Corrected)?)?;
    let rhs = BigInt::from(n) * (BigInt::from(1) << (n - 1)) * &qad * &qad;
    Ok(IdentityCheck { lhs, rhs })
}

pub const MAX_QAD_PRODUCT_ORDER: usize = 1024;

/// A logarithm, with the full decimal expansion when computed in extended
/// precision.
#[derive(Debug, Clone, PartialEq)]
pub struct LogValue {
    pub value: f64,
    pub digits: Option<String>,
}

/// `log τ(QAD_n) = Σ_{0<k₁<k₂<n} log(4sin²(πk₁/2n) + 4sin²(πk₂/2n))`,
/// reduced row by row in a fixed order.
pub fn tau_qad_product(n: usize, mode: PrecisionMode, exec: Exec) -> Result<LogValue> {
    if n == 0 || n > MAX_QAD_PRODUCT_ORDER {
        return Err(Error::Size(format!(
            "QAD order must be in 1..={MAX_QAD_PRODUCT_ORDER}, got {n}"
        )));
    }
    match mode {
        PrecisionMode::Standard => {
            let s: Vec<f64> = (0..n).map(|k| four_sin_sq(k, n)).collect();
            let rows = exec.map_range(n, |k1| {
                let mut acc = CompensatedSum::new();
                for k2 in k1 + 1..n {
                    if k1 > 0 {
                        acc.add((s[k1] + s[k2]).ln());
                    }
                }
                acc
            });
            let mut total = CompensatedSum::new();
            for r in &rows {
                total.merge(r);
            }
            Ok(LogValue { value: total.value(), digits: None })
        }
        PrecisionMode::Extended => {
            let mut cc = ext::consts();
            let s = ext::four_sin_sq(n, n, &mut cc);
            let rows = exec.map_range(n.saturating_sub(1), |i| {
                let k1 = i + 1;
                let mut cc = ext::consts();
                let mut acc = ext::zero();
                for k2 in k1 + 1..n {
                    let x = s[k1].add(&s[k2], ext::BITS, ext::RM);
                    acc = acc.add(&x.ln(ext::BITS, ext::RM, &mut cc), ext::BITS, ext::RM);
                }
                acc
            });
            let total = rows.iter().fold(ext::zero(), |a, r| a.add(r, ext::BITS, ext::RM));
            Ok(LogValue {
                value: ext::to_f64(&total, &mut cc),
                digits: Some(ext::to_decimal(&total, &mut cc)),
            })
        }
    }
}
