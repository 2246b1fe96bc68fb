//! Sequential or data-parallel execution of the exhaustive sweeps.
//!
//! With the `rayon` feature disabled, [`Exec::Parallel`] silently runs the
//! sequential path. Results never depend on the mode: every helper here
//! returns its output in index order.

#[cfg(feature = "rayon")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// True when work will actually be spread over the rayon pool.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "rayon") && self == Exec::Parallel
    }
}

/// `(0..len).map(f).collect()`, in index order.
pub fn map_range<T, F>(exec: Exec, len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "rayon")]
    if exec.is_parallel() {
        return (0..len).into_par_iter().map(f).collect();
    }
    let _ = exec;
    (0..len).map(f).collect()
}

/// Maps a slice, preserving order.
pub fn map_slice<S, T, F>(exec: Exec, items: &[S], f: F) -> Vec<T>
where
    S: Sync,
    T: Send,
    F: Fn(&S) -> T + Sync + Send,
{
    #[cfg(feature = "rayon")]
    if exec.is_parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// `(0..len).filter_map(f).collect()`, in index order.
pub fn filter_map_range<T, F>(exec: Exec, len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> Option<T> + Sync + Send,
{
    #[cfg(feature = "rayon")]
    if exec.is_parallel() {
        return (0..len).into_par_iter().filter_map(f).collect();
    }
    let _ = exec;
    (0..len).filter_map(f).collect()
}

/// Number of indices in `0..len` satisfying `pred`.
pub fn count_range<F>(exec: Exec, len: usize, pred: F) -> usize
where
    F: Fn(usize) -> bool + Sync + Send,
{
    #[cfg(feature = "rayon")]
    if exec.is_parallel() {
        return (0..len).into_par_iter().filter(|&i| pred(i)).count();
    }
    let _ = exec;
    (0..len).filter(|&i| pred(i)).count()
}
