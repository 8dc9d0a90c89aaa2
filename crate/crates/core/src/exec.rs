//! Execution strategy for batch work: independent instances, seed sweeps and
//! oracle calls. Results are always returned in input order, so the choice of
//! strategy never changes an answer.

use std::ops::Range;

/// How batch loops are run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Exec {
    /// Plain iterator loop on the calling thread.
    Sequential,
    /// rayon work-stealing over the current pool. Falls back to the
    /// sequential loop when the crate is built without the `parallel` feature.
    #[default]
    Parallel,
}

impl Exec {
    /// True when this build can actually run `Parallel` on multiple threads.
    pub fn parallel_available() -> bool {
        cfg!(feature = "parallel")
    }

    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            Exec::Sequential => items.iter().map(f).collect(),
            Exec::Parallel => par_map(items, f),
        }
    }

    pub fn map_range<R, F>(self, range: Range<usize>, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        match self {
            Exec::Sequential => range.map(f).collect(),
            Exec::Parallel => par_map_range(range, f),
        }
    }

    /// Whether any element satisfies `pred`. The sequential path stops at the
    /// first hit; the parallel path may evaluate extra elements.
    pub fn any<T, F>(self, items: &[T], pred: F) -> bool
    where
        T: Sync,
        F: Fn(&T) -> bool + Sync + Send,
    {
        match self {
            Exec::Sequential => items.iter().any(pred),
            Exec::Parallel => par_any(items, pred),
        }
    }
}

#[cfg(feature = "parallel")]
fn par_map<T: Sync, R: Send, F: Fn(&T) -> R + Sync + Send>(items: &[T], f: F) -> Vec<R> {
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn par_map<T: Sync, R: Send, F: Fn(&T) -> R + Sync + Send>(items: &[T], f: F) -> Vec<R> {
    items.iter().map(f).collect()
}

#[cfg(feature = "parallel")]
fn par_map_range<R: Send, F: Fn(usize) -> R + Sync + Send>(range: Range<usize>, f: F) -> Vec<R> {
    use rayon::prelude::*;
    range.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn par_map_range<R: Send, F: Fn(usize) -> R + Sync + Send>(range: Range<usize>, f: F) -> Vec<R> {
    range.map(f).collect()
}

#[cfg(feature = "parallel")]
fn par_any<T: Sync, F: Fn(&T) -> bool + Sync + Send>(items: &[T], pred: F) -> bool {
    use rayon::prelude::*;
    items.par_iter().any(pred)
}

#[cfg(not(feature = "parallel"))]
fn par_any<T: Sync, F: Fn(&T) -> bool + Sync + Send>(items: &[T], pred: F) -> bool {
    items.iter().any(pred)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree_and_keep_order() {
        let xs: Vec<u64> = (0..1000).collect();
        let a = Exec::Sequential.map(&xs, |x| x * x);
        let b = Exec::Parallel.map(&xs, |x| x * x);
        assert_eq!(a, b);
        assert_eq!(Exec::Sequential.map_range(0..50, |i| i + 1), Exec::Parallel.map_range(0..50, |i| i + 1));
        assert!(Exec::Parallel.any(&xs, |&x| x == 999));
        assert!(!Exec::Sequential.any(&xs, |&x| x == 1000));
    }
}
