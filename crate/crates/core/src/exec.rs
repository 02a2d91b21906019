//! Execution strategy for the data-parallel kernels.
//!
//! Every kernel that scans a large index space (candidate masks, subfamily
//! prefixes, enumerated families) goes through the helpers here. Output
//! order never depends on the strategy: parallel runs use indexed rayon
//! iterators, which keep the sequential order on `collect`.
//!
//! Without the `parallel` feature, [`Exec::Parallel`] silently runs
//! sequentially.

/// How a kernel should run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Exec {
    Sequential,
    Parallel,
}

/// Work below this many items is not worth a rayon split.
const PARALLEL_THRESHOLD: usize = 1 << 12;

impl Exec {
    /// Parallel for large workloads when the feature is on, sequential otherwise.
    pub fn auto(work: usize) -> Exec {
        if cfg!(feature = "parallel") && work >= PARALLEL_THRESHOLD {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }

    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
}

/// Keep every `x` in `lo..hi` satisfying `keep`, in ascending order.
pub(crate) fn filter_range<F>(exec: Exec, lo: u32, hi: u32, keep: F) -> Vec<u32>
where
    F: Fn(u32) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return (lo..hi).into_par_iter().filter(|&x| keep(x)).collect();
    }
    let _ = exec;
    (lo..hi).filter(|&x| keep(x)).collect()
}

/// Map a slice, preserving order.
pub(crate) fn map_slice<T, R, F>(exec: Exec, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}
