//! Thin indirection over rayon so the crate builds with a purely
//! sequential core when the `parallel` feature is disabled.

#[cfg(feature = "parallel")]
pub(crate) fn map_vec<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    items.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_vec<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    F: Fn(T) -> U,
{
    items.into_iter().map(f).collect()
}

/// Runs `f` on a pool limited to `threads` workers (`None` = rayon default).
/// Results are identical for every thread count; only wall time changes.
#[cfg(feature = "parallel")]
pub fn with_thread_limit<R: Send>(threads: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    match threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .expect("failed to build thread pool");
            pool.install(f)
        }
        None => f(),
    }
}

/// Sequential build: the thread limit is irrelevant.
#[cfg(not(feature = "parallel"))]
pub fn with_thread_limit<R>(_threads: Option<usize>, f: impl FnOnce() -> R) -> R {
    f()
}
