//! Data-parallel kernels with a sequential fallback.
//!
//! With the `parallel` feature (the default) the dispatching helpers run on
//! rayon; without it they run the same code sequentially. All results are
//! order-independent and bit-identical between the two modes, which the test
//! suite asserts via the public `*_seq` twins of the hot entry points.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over `0..n`, preserving index order.
pub(crate) fn map_range<T, F>(n: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Sequential twin of [`map_range`].
pub(crate) fn map_range_seq<T, F>(n: u64, f: F) -> Vec<T>
where
    F: Fn(u64) -> T,
{
    (0..n).map(f).collect()
}

