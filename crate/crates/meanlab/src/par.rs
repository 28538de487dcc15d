//! Data-parallel trial execution with a sequential fallback.
//!
//! Verification suites are embarrassingly parallel loops over independent
//! trials. With the `parallel` feature (the default) the indexed map runs on
//! the rayon thread pool; without it, the same API runs sequentially.
//! Determinism does not depend on the feature: every trial derives its own
//! RNG stream from (seed, index), so results are identical under any
//! scheduling. The explicitly sequential variant stays available in both
//! configurations so benchmarks can compare the two paths directly.

/// Applies `f` to every index in `0..n`, in parallel when the `parallel`
/// feature is enabled. The output order always matches the index order.
#[cfg(feature = "parallel")]
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

/// Applies `f` to every index in `0..n`, in parallel when the `parallel`
/// feature is enabled. The output order always matches the index order.
#[cfg(not(feature = "parallel"))]
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    map_indexed_seq(n, f)
}

/// Sequential variant of [`map_indexed`], always available; benchmarks use it
/// as the baseline against the parallel path.
pub fn map_indexed_seq<T, F>(n: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..n).map(f).collect()
}
