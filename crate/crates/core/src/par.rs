//! Block-level execution strategy.
//!
//! Blocks are independent, so split and combine can fan out across threads.
//! Results are always collected in input order; the strategy never changes
//! output bytes.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Execution {
    #[cfg_attr(not(feature = "parallel"), default)]
    Sequential,
    /// Rayon work-stealing over blocks. Needs the `parallel` feature.
    #[cfg(feature = "parallel")]
    #[default]
    Parallel,
}

/// Applies `f` to every item and collects the results in order.
pub fn map_ordered<T, U, F>(items: &[T], execution: Execution, f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    match execution {
        Execution::Sequential => items.iter().map(f).collect(),
        #[cfg(feature = "parallel")]
        Execution::Parallel => items.par_iter().map(f).collect(),
    }
}
