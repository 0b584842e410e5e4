use super::graph::GraphSpec;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Vertex limit for [`forest_polynomial`].
pub const MAX_FOREST_VERTICES: usize = 100;

/// Determinant of a square integer matrix by Bareiss fraction-free
/// elimination with row pivoting.
pub fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Number of spanning trees: the Laplacian cofactor at vertex 0.
pub fn matrix_tree(g: &GraphSpec) -> Result<BigInt> {
    g.check_connected()?;
    let lap = g.laplacian();
    let reduced = lap[1..]
        .iter()
        .map(|row| row[1..].iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    Ok(bareiss_determinant(reduced))
}

/// Coefficients `c₀…c_N` of `det(Δ + xI)`; `c_k` counts rooted spanning
/// forests with `k` trees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForestPolynomial {
    coeffs: Vec<BigInt>,
}

impl ForestPolynomial {
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// `N_k / N_1` as an exact rational.
    pub fn ratio(&self, k: usize) -> Result<BigRational> {
        let n1 = self.coeff(1);
        if n1.is_zero() {
            return Err(Error::Domain("N_1 vanishes".into()));
        }
        Ok(BigRational::new(self.coeff(k), n1))
    }
}

/// Characteristic polynomial `det(xI − A)`, coefficients from the constant
/// term up, by Berkowitz's division-free recursion.
pub fn characteristic_polynomial(a: &[Vec<BigInt>]) -> Vec<BigInt> {
    // descending coefficients of det(xI − A_k) for the leading k×k block
    let mut poly = vec![BigInt::one()];
    for k in 0..a.len() {
        let mut toeplitz = Vec::with_capacity(k + 2);
        toeplitz.push(BigInt::one());
        toeplitz.push(-a[k][k].clone());
        let mut v: Vec<BigInt> = (0..k).map(|i| a[i][k].clone()).collect();
        for _ in 0..k {
            let dot: BigInt = (0..k).map(|j| &a[k][j] * &v[j]).sum();
            toeplitz.push(-dot);
            v = (0..k)
                .map(|i| (0..k).map(|j| &a[i][j] * &v[j]).sum())
                .collect();
        }
        poly = (0..k + 2)
            .map(|i| (0..=i.min(k)).map(|j| &toeplitz[i - j] * &poly[j]).sum())
            .collect();
    }
    poly.reverse();
    poly
}

pub fn forest_polynomial(g: &GraphSpec) -> Result<ForestPolynomial> {
    if g.vertex_count() > MAX_FOREST_VERTICES {
        return Err(Error::Size(format!(
            "forest polynomial is limited to {MAX_FOREST_VERTICES} vertices"
        )));
    }
    let neg: Vec<Vec<BigInt>> = g
        .laplacian()
        .into_iter()
        .map(|row| row.into_iter().map(|x| BigInt::from(-x)).collect())
        .collect();
    let coeffs = characteristic_polynomial(&neg);
    debug_assert!(coeffs.iter().all(|c| !c.is_negative()));
    Ok(ForestPolynomial { coeffs })
}
