//! Block-structured summation with a deterministic reduction.
//!
//! Every data-parallel loop in the crate is expressed as a sum over
//! numbered blocks. Block values are computed independently (in parallel
//! when the `parallel` feature is enabled) and reduced by a pairwise tree
//! in block order, so the result is bit-identical across thread counts
//! and identical to the sequential fallback.

use crate::numerics::pairwise_sum;

/// Sum `f(0) + f(1) + … + f(blocks-1)` sequentially.
pub fn sum_blocks_seq<F>(blocks: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync + Send,
{
    let vals: Vec<f64> = (0..blocks).map(f).collect();
    pairwise_sum(&vals)
}

/// Sum `f(0) + f(1) + … + f(blocks-1)` on the current rayon pool.
#[cfg(feature = "parallel")]
pub fn sum_blocks_par<F>(blocks: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync + Send,
{
    use rayon::prelude::*;
    let vals: Vec<f64> = (0..blocks).into_par_iter().map(f).collect();
    pairwise_sum(&vals)
}

/// Feature-dispatched block sum used by all series and lattice kernels.
#[cfg(feature = "parallel")]
pub fn sum_blocks<F>(blocks: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync + Send,
{
    sum_blocks_par(blocks, f)
}

/// Feature-dispatched block sum used by all series and lattice kernels.
#[cfg(not(feature = "parallel"))]
pub fn sum_blocks<F>(blocks: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync + Send,
{
    sum_blocks_seq(blocks, f)
}

/// Bound the global thread pool, e.g. from the CASIMIR_THREADS variable.
/// A no-op on the sequential build or if a pool already exists.
pub fn configure_threads(threads: Option<usize>) {
    #[cfg(feature = "parallel")]
    if let Some(n) = threads {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = threads;
}
