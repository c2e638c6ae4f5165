//! Data-parallel mapping for sweep and oracle workloads.
//!
//! With the `parallel` feature (default) the work is spread over a rayon
//! pool; without it, or when the caller asks for sequential execution,
//! items are processed in order. Results always come back in input order,
//! so downstream aggregation is deterministic either way.

/// Map `f` over `items`, in parallel when both the feature and the flag
/// allow it.
#[cfg(feature = "parallel")]
pub fn maybe_par_map<T, R, F>(items: Vec<T>, parallel: bool, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    if parallel {
        items.into_par_iter().map(f).collect()
    } else {
        items.into_iter().map(f).collect()
    }
}

#[cfg(not(feature = "parallel"))]
pub fn maybe_par_map<T, R, F>(items: Vec<T>, _parallel: bool, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    items.into_iter().map(f).collect()
}

/// Configure the global thread pool size; 0 means automatic. A no-op
/// without the `parallel` feature or once a pool exists.
#[cfg(feature = "parallel")]
pub fn set_threads(n: usize) {
    if n > 0 {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

#[cfg(not(feature = "parallel"))]
pub fn set_threads(_n: usize) {}
