//! Execution-mode plumbing: data-parallel map over independent work items
//! with a sequential fallback.
//!
//! Relation instances and hom-space sweeps are independent of one another
//! and read a shared immutable functor image, so they parallelize freely.
//! Results come back in input order either way, keeping reports
//! deterministic. Building without the `parallel` feature compiles the
//! sequential path only.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[derive(Default)]
pub enum ExecMode {
    Sequential,
    /// Fan out over a rayon pool. Falls back to sequential when the
    /// `parallel` feature is disabled.
    #[default]
    Parallel,
}


#[cfg(feature = "parallel")]
pub fn run_map<T, R, F>(mode: ExecMode, items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    match mode {
        ExecMode::Sequential => items.into_iter().map(f).collect(),
        ExecMode::Parallel => items.into_par_iter().map(f).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
pub fn run_map<T, R, F>(_mode: ExecMode, items: Vec<T>, f: F) -> Vec<R>
where
    F: Fn(T) -> R,
{
    items.into_iter().map(f).collect()
}
