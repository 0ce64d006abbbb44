//! Execution strategy for the data-parallel stages (key hashing and batch
//! evaluation). Results never depend on the strategy.

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    #[cfg_attr(not(feature = "parallel"), default)]
    Sequential,
    #[cfg(feature = "parallel")]
    #[default]
    Parallel,
}

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// `items.map(f).collect()` under the chosen strategy, preserving order.
pub(crate) fn map_collect<T, U, F>(exec: Exec, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    match exec {
        Exec::Sequential => items.iter().map(f).collect(),
        #[cfg(feature = "parallel")]
        Exec::Parallel => items.par_iter().map(f).collect(),
    }
}

/// Writes `f(item)` into `out` element-wise.
pub(crate) fn map_into<T, U, F>(exec: Exec, items: &[T], out: &mut [U], f: F)
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    assert_eq!(items.len(), out.len());
    match exec {
        Exec::Sequential => {
            for (o, x) in out.iter_mut().zip(items) {
                *o = f(x);
            }
        }
        #[cfg(feature = "parallel")]
        Exec::Parallel => out.par_iter_mut().zip(items.par_iter()).for_each(|(o, x)| *o = f(x)),
    }
}
