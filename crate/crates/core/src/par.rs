//! Index-ordered data parallelism. With the `parallel` feature these run on
//! rayon; without it they are plain sequential loops. Results are always
//! returned in index order, so callers see the same output either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// `(0..len).map(f).collect()`, possibly in parallel.
pub fn map_indexed<T, F>(len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..len).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..len).map(f).collect()
    }
}

/// Number of indices in `0..len` satisfying `pred`.
pub fn count_indexed<F>(len: usize, pred: F) -> usize
where
    F: Fn(usize) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..len).into_par_iter().filter(|&i| pred(i)).count()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..len).filter(|&i| pred(i)).count()
    }
}

/// Smallest index in `0..len` for which `f` returns `Some`.
pub fn find_first<T, F>(len: usize, f: F) -> Option<(usize, T)>
where
    T: Send,
    F: Fn(usize) -> Option<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..len).into_par_iter().find_map_first(|i| f(i).map(|t| (i, t)))
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..len).find_map(|i| f(i).map(|t| (i, t)))
    }
}

/// Runs `op` on a pool of `workers` threads (or the global pool for `None`).
/// Sequential builds ignore the worker count.
pub fn with_workers<R: Send>(workers: Option<usize>, op: impl FnOnce() -> R + Send) -> R {
    #[cfg(feature = "parallel")]
    {
        match workers {
            Some(n) => rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build().expect("thread pool").install(op),
            None => op(),
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = workers;
        op()
    }
}

pub fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}
