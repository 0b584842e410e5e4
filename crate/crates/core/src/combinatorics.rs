//! Subset-indexed binomial inversion.
//!
//! A [`SubsetTable`] holds one value per subset of `{0,…,l−1}`, subsets
//! encoded as bitmasks. [`forward`] sums over subsets and [`invert`] undoes
//! it; both run as in-place butterfly transforms in `O(l·2^l)`. The empty
//! set carries the value one.

use crate::error::{Error, Result};
use num_traits::{One, Zero};
use std::ops::{Add, Sub};

pub const MAX_GROUND_SET: usize = 20;

#[derive(Debug, Clone, PartialEq)]
pub struct SubsetTable<T> {
    ground_set_size: usize,
    values: Vec<T>,
}

impl<T> SubsetTable<T>
where
    T: Clone + PartialEq + Zero + One,
{
    /// Builds a table from all `2^l` values, indexed by bitmask. `values[0]`
    /// (the empty set) must be one.
    pub fn new(ground_set_size: usize, values: Vec<T>) -> Result<Self> {
        check_size(ground_set_size)?;
        if values.len() != 1 << ground_set_size {
            return Err(Error::Size(format!(
                "table over {ground_set_size} elements needs {} values, got {}",
                1usize << ground_set_size,
                values.len()
            )));
        }
        if !values[0].is_one() {
            return Err(Error::Parameter("the empty-set entry must be one".into()));
        }
        Ok(Self { ground_set_size, values })
    }

    /// Builds a table from a function of nonempty masks; the empty set gets one.
    pub fn from_fn(ground_set_size: usize, mut f: impl FnMut(u32) -> T) -> Result<Self> {
        check_size(ground_set_size)?;
        let values = (0..1u32 << ground_set_size)
            .map(|mask| if mask == 0 { T::one() } else { f(mask) })
            .collect();
        Ok(Self { ground_set_size, values })
    }

    pub fn ground_set_size(&self) -> usize {
        self.ground_set_size
    }

    pub fn get(&self, mask: u32) -> &T {
        &self.values[mask as usize]
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }
}

fn check_size(l: usize) -> Result<()> {
    if l > MAX_GROUND_SET {
        return Err(Error::Size(format!(
            "ground set size {l} exceeds {MAX_GROUND_SET}"
        )));
    }
    Ok(())
}

/// `f(S) = Σ_{T ⊆ S} g(T)`.
pub fn forward<T>(g: &SubsetTable<T>) -> SubsetTable<T>
where
    T: Clone + PartialEq + Zero + One + Add<Output = T>,
{
    let mut v = g.values.clone();
    for bit in 0..g.ground_set_size {
        let step = 1 << bit;
        for mask in 0..v.len() {
            if mask & step != 0 {
                v[mask] = v[mask].clone() + v[mask ^ step].clone();
            }
        }
    }
    // the empty set is fixed by the transform, so it stays one
    SubsetTable { ground_set_size: g.ground_set_size, values: v }
}

/// `g(S) = Σ_{T ⊆ S} (−1)^{|S|−|T|} f(T)`, the inverse of [`forward`].
pub fn invert<T>(f: &SubsetTable<T>) -> SubsetTable<T>
where
    T: Clone + PartialEq + Zero + One + Sub<Output = T>,
{
    let mut v = f.values.clone();
    for bit in 0..f.ground_set_size {
        let step = 1 << bit;
        for mask in 0..v.len() {
            if mask & step != 0 {
                v[mask] = v[mask].clone() - v[mask ^ step].clone();
            }
        }
    }
    SubsetTable { ground_set_size: f.ground_set_size, values: v }
}

/// `C(l−m, k−m)·C(l, m)`: the number of chains `U ⊆ T ⊆ S` with `|S| = l`,
/// `|T| = k`, `|U| = m`.
pub fn nested_pair_count(l: u32, k: u32, m: u32) -> Result<u128> {
    if !(m <= k && k <= l) {
        return Err(Error::Parameter(format!("need m <= k <= l, got l={l}, k={k}, m={m}")));
    }
    Ok(binomial(l - m, k - m) * binomial(l, m))
}

pub fn binomial(n: u32, k: u32) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}
