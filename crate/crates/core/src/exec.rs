//! Indexed map that runs on the rayon pool when the `parallel` feature is
//! enabled and the caller asks for it, and sequentially otherwise.

/// Computes `f(0), .., f(n-1)` in index order.
pub fn map_indexed<T, F>(n: usize, parallel: bool, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        use rayon::prelude::*;
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = parallel;
    (0..n).map(f).collect()
}

/// Whether this build can run work in parallel at all.
pub const fn parallel_available() -> bool {
    cfg!(feature = "parallel")
}
