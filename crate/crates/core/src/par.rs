//! Data-parallel helpers. With the `parallel` feature these dispatch to rayon;
//! without it they run the same closures sequentially. Results are collected
//! in input order either way, so outputs never depend on the thread count.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

pub fn num_threads() -> usize {
    #[cfg(feature = "parallel")]
    {
        rayon::current_num_threads()
    }
    #[cfg(not(feature = "parallel"))]
    {
        1
    }
}

/// Maps `f` over `0..len` and collects the results in index order.
pub fn map_range<R, F>(len: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Send + Sync,
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

/// Maps `f` over a slice and collects the results in slice order.
pub fn map_slice<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Send + Sync,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// Returns the result for the lowest index at which `f` yields `Some`.
pub fn find_map_first<T, R, F>(items: &[T], f: F) -> Option<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Option<R> + Send + Sync,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().find_map_first(f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().find_map(f)
    }
}

/// Folds chunks of `0..len` into per-chunk accumulators, then merges them
/// left to right. `merge` must be associative; chunk boundaries are fixed
/// independently of the thread count.
pub fn fold_range<A, I, F, M>(len: usize, init: I, fold: F, merge: M) -> A
where
    A: Send,
    I: Fn() -> A + Send + Sync,
    F: Fn(&mut A, usize) + Send + Sync,
    M: Fn(A, A) -> A + Send + Sync,
{
    const CHUNK: usize = 1024;
    let chunks = len.div_ceil(CHUNK);
    let partials = map_range(chunks, |c| {
        let mut acc = init();
        for i in c * CHUNK..((c + 1) * CHUNK).min(len) {
            fold(&mut acc, i);
        }
        acc
    });
    partials.into_iter().fold(init(), merge)
}

/// Returns true if `f` holds for every index in `0..len`.
pub fn all_range<F>(len: usize, f: F) -> bool
where
    F: Fn(usize) -> bool + Send + Sync,
{
    #[cfg(feature = "parallel")]
    {
        (0..len).into_par_iter().all(f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..len).all(f)
    }
}

/// Runs two closures, concurrently when the `parallel` feature is on.
pub fn join<A, B, RA, RB>(a: A, b: B) -> (RA, RB)
where
    A: FnOnce() -> RA + Send,
    B: FnOnce() -> RB + Send,
    RA: Send,
    RB: Send,
{
    #[cfg(feature = "parallel")]
    {
        rayon::join(a, b)
    }
    #[cfg(not(feature = "parallel"))]
    {
        (a(), b())
    }
}
