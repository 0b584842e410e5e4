//! Compensated accumulation and the deterministic chunked reduction used by
//! every streamed spectral sum.
//!
//! Index ranges are cut into fixed chunks of [`CHUNK`] consecutive indices.
//! Each chunk is summed in index order with a Neumaier accumulator, and the
//! chunk partials are then combined in chunk order. The reduction tree is a
//! function of the range length only, so the sequential and parallel paths
//! return bit-identical results for any thread count.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Number of consecutive indices reduced by one task.
pub const CHUNK: usize = 4096;

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    /// Folds another partial sum in, keeping its compensation term separate.
    pub fn merge(&mut self, other: &CompensatedSum) {
        self.add(other.sum);
        self.add(other.compensation);
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl Extend<f64> for CompensatedSum {
    fn extend<I: IntoIterator<Item = f64>>(&mut self, iter: I) {
        for x in iter {
            self.add(x);
        }
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = CompensatedSum::new();
        s.extend(iter);
        s
    }
}

/// Execution strategy for the data-parallel kernels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    /// Rayon work-stealing over chunks. Without the `parallel` feature this
    /// runs sequentially.
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    /// Maps `f` over `items`, preserving order.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => items.par_iter().map(f).collect(),
            _ => items.iter().map(f).collect(),
        }
    }

    /// Maps `f` over `0..len`, preserving order.
    pub fn map_range<R, F>(self, len: usize, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => (0..len).into_par_iter().map(f).collect(),
            _ => (0..len).map(f).collect(),
        }
    }

    /// Deterministic compensated sum of `chunk_sum` over the chunks of
    /// `0..len`. `chunk_sum(start, end)` must sum indices `start..end` in
    /// increasing order.
    pub fn sum_chunks<F>(self, len: usize, chunk_sum: F) -> f64
    where
        F: Fn(usize, usize) -> CompensatedSum + Sync + Send,
    {
        let chunks = len.div_ceil(CHUNK);
        let partials = self.map_range(chunks, |c| {
            let start = c * CHUNK;
            chunk_sum(start, (start + CHUNK).min(len))
        });
        let mut total = CompensatedSum::new();
        for p in &partials {
            total.merge(p);
        }
        total.value()
    }

    /// Deterministic compensated sum of `f(i)` for `i` in `0..len`.
    pub fn sum_indexed<F>(self, len: usize, f: F) -> f64
    where
        F: Fn(usize) -> f64 + Sync + Send,
    {
        self.sum_chunks(len, |start, end| (start..end).map(&f).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let mut s = CompensatedSum::new();
        s.add(1.0);
        for _ in 0..10_000 {
            s.add(1e-16);
        }
        s.add(-1.0);
        assert!((s.value() - 1e-12).abs() < 1e-22);
    }

    #[test]
    fn cancellation_case() {
        let s: CompensatedSum = [1.0, 1e100, 1.0, -1e100].into_iter().collect();
        assert_eq!(s.value(), 2.0);
    }

    #[test]
    fn sequential_and_parallel_agree_bitwise() {
        let len = 3 * CHUNK + 17;
        let f = |i: usize| ((i as f64) * 0.37).sin() / (1.0 + i as f64);
        let a = Exec::Sequential.sum_indexed(len, f);
        let b = Exec::Parallel.sum_indexed(len, f);
        assert_eq!(a.to_bits(), b.to_bits());
    }

    #[test]
    fn map_preserves_order() {
        let v: Vec<usize> = (0..100).collect();
        assert_eq!(Exec::Parallel.map(&v, |x| x * 2), Exec::Sequential.map(&v, |x| x * 2));
    }
}
