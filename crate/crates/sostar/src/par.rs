//! Data-parallel map with a sequential fallback.
//!
//! With the `parallel` feature the work fans out over rayon's pool whenever
//! more than one job slot is requested; results come back in input order
//! either way, so reported numbers never depend on the thread count.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[cfg(feature = "parallel")]
pub fn map_jobs<T, R, F>(items: Vec<T>, jobs: usize, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    if jobs == 1 {
        items.into_iter().map(f).collect()
    } else {
        items.into_par_iter().map(f).collect()
    }
}

#[cfg(not(feature = "parallel"))]
pub fn map_jobs<T, R, F>(items: Vec<T>, _jobs: usize, f: F) -> Vec<R>
where
    F: Fn(T) -> R,
{
    items.into_iter().map(f).collect()
}
