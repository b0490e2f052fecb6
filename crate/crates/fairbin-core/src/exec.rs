//! Execution-mode plumbing for the data-parallel paths.
//!
//! Built with the `parallel` feature (default), [`Threading::Parallel`]
//! fans work out over rayon; without it the same entry points run the
//! sequential fallback. Both modes produce byte-identical results: parallel
//! reductions are ordered, and enumeration is chunked into fixed-size waves
//! whose boundaries do not depend on the worker count.

/// Worker-pool selection for solver internals and the bench harness.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Threading {
    Sequential,
    /// Rayon data-parallel execution; falls back to sequential when the
    /// crate is built without the `parallel` feature.
    Parallel,
}

impl Default for Threading {
    fn default() -> Self {
        Threading::Parallel
    }
}

impl Threading {
    #[inline]
    pub fn is_parallel(&self) -> bool {
        match self {
            Threading::Sequential => false,
            Threading::Parallel => cfg!(feature = "parallel"),
        }
    }
}

/// Name of the environment variable bounding the worker pool.
pub const THREADS_ENV: &str = "FAIRBIN_THREADS";

/// Reads `FAIRBIN_THREADS`; `None` means "let rayon decide".
pub fn threads_from_env() -> Option<usize> {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&t| t > 0)
}

/// Runs `f` inside a rayon pool bounded by `threads` (when the `parallel`
/// feature is on and a bound is given); otherwise runs it directly.
pub fn with_thread_bound<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    #[cfg(feature = "parallel")]
    {
        if let Some(t) = threads {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .expect("failed to build rayon pool");
            return pool.install(f);
        }
    }
    let _ = threads;
    f()
}
