//! Execution strategy for the data-parallel sweeps.
//!
//! With the `parallel` feature (default) [`Execution::Parallel`] dispatches to
//! rayon; without it every strategy runs sequentially. Results never depend on
//! the strategy: every parallel sweep either collects in input order or is
//! followed by a canonical sort.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Execution {
    Sequential,
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
    /// Maps `f` over `items`, preserving order.
    pub fn map<T, U, F>(self, items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> U + Sync + Send,
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

    /// Returns the first (in input order) `Some` produced by `f`.
    pub fn find_map_first<T, U, F>(self, items: &[T], f: F) -> Option<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> Option<U> + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => {
                use rayon::prelude::*;
                items.par_iter().find_map_first(f)
            }
            _ => items.iter().find_map(f),
        }
    }

    /// True iff `f` holds for every item.
    pub fn all<T, F>(self, items: &[T], f: F) -> bool
    where
        T: Sync,
        F: Fn(&T) -> bool + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => {
                use rayon::prelude::*;
                items.par_iter().all(f)
            }
            _ => items.iter().all(f),
        }
    }
}
