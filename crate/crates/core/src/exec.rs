//! Evaluation strategy for the node/sample loops that dominate runtime.
//!
//! Every batch loop in the crate funnels through [`map_indexed`], which
//! dispatches to rayon when the `parallel` feature is enabled and the batch
//! is large enough to amortize scheduling. Results are produced by index, so
//! the output vector is identical whichever strategy runs; reductions over
//! these vectors use [`pairwise_sum`], which fixes the association order and
//! keeps results bit-stable across thread counts.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use num_complex::Complex64;

/// Batches smaller than this run sequentially even with `parallel` enabled.
const PAR_THRESHOLD: usize = 512;

/// Evaluates `f(0..n)` into a vector, sequentially.
///
/// Always available; benchmarks use it as the baseline.
pub fn map_indexed_seq<T, F>(n: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..n).map(f).collect()
}

/// Evaluates `f(0..n)` into a vector on the rayon pool.
#[cfg(feature = "parallel")]
pub fn map_indexed_par<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..n).into_par_iter().map(f).collect()
}

/// Evaluates `f` at every index in `0..n`, choosing the strategy.
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if n >= PAR_THRESHOLD {
            return map_indexed_par(n, f);
        }
    }
    map_indexed_seq(n, f)
}

/// Sums a slice with pairwise (cascade) association.
///
/// The association tree depends only on `len`, never on how the values were
/// produced, so sums agree bit-for-bit between the parallel and sequential
/// evaluation paths and the rounding error grows like `O(log n)` instead of
/// `O(n)`.
pub fn pairwise_sum(values: &[Complex64]) -> Complex64 {
    if values.len() <= 32 {
        let mut acc = Complex64::new(0.0, 0.0);
        for v in values {
            acc += v;
        }
        return acc;
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

/// Pairwise sum for real slices; same association tree as [`pairwise_sum`].
pub fn pairwise_sum_f64(values: &[f64]) -> f64 {
    if values.len() <= 32 {
        return values.iter().sum();
    }
    let mid = values.len() / 2;
    pairwise_sum_f64(&values[..mid]) + pairwise_sum_f64(&values[mid..])
}
