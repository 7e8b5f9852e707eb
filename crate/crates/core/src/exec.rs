//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature the hot loops (word enumeration, fingerprint
//! evaluation, invertibility search) run on rayon. Results never depend on
//! the schedule: maps preserve input order and searches return the match
//! with the smallest index.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Falls back to sequential when built without the `parallel` feature.
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

impl Execution {
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => {
                use rayon::prelude::*;
                items.par_iter().map(f).collect()
            }
            _ => items.iter().map(f).collect(),
        }
    }

    /// `f(i)` for each `i` in `0..count`, concatenated in index order.
    pub fn flat_map_range<R, F>(self, count: u64, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(u64) -> Vec<R> + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => {
                use rayon::prelude::*;
                (0..count).into_par_iter().flat_map_iter(f).collect()
            }
            _ => (0..count).flat_map(f).collect(),
        }
    }

    /// The first `f(i)` (by index) that returns `Some`.
    pub fn find_first<R, F>(self, count: u64, f: F) -> Option<R>
    where
        R: Send,
        F: Fn(u64) -> Option<R> + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => {
                use rayon::prelude::*;
                (0..count).into_par_iter().find_map_first(f)
            }
            _ => (0..count).find_map(f),
        }
    }
}
