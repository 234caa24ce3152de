//! Exhaustive index scans. With the `parallel` feature they can run on the
//! rayon pool; results never depend on how the range was split.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    #[cfg(feature = "parallel")]
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        #[cfg(feature = "parallel")]
        return Exec::Parallel;
        #[cfg(not(feature = "parallel"))]
        Exec::Sequential
    }
}

/// Smallest `(key, index)` over `0..total` among indices where `f` returns a key.
pub fn min_key<K, F>(exec: Exec, total: u64, f: F) -> Option<(K, u64)>
where
    K: Ord + Send,
    F: Fn(u64) -> Option<K> + Sync + Send,
{
    match exec {
        Exec::Sequential => (0..total).filter_map(|i| f(i).map(|k| (k, i))).min(),
        #[cfg(feature = "parallel")]
        Exec::Parallel => (0..total)
            .into_par_iter()
            .filter_map(|i| f(i).map(|k| (k, i)))
            .min(),
    }
}

/// Lowest index in `0..total` satisfying `pred`.
pub fn find_first<F>(exec: Exec, total: u64, pred: F) -> Option<u64>
where
    F: Fn(u64) -> bool + Sync + Send,
{
    match exec {
        Exec::Sequential => (0..total).find(|&i| pred(i)),
        #[cfg(feature = "parallel")]
        Exec::Parallel => (0..total).into_par_iter().find_first(|&i| pred(i)),
    }
}

/// `f` applied to every index, in index order.
pub fn map_collect<T, F>(exec: Exec, total: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    match exec {
        Exec::Sequential => (0..total).map(f).collect(),
        #[cfg(feature = "parallel")]
        Exec::Parallel => (0..total).into_par_iter().map(f).collect(),
    }
}
