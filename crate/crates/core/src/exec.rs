//! Sequential or data-parallel execution of the corpus loops.
//!
//! With the `parallel` feature disabled, [`Exec::Parallel`] runs sequentially.
//! Every combinator returns results that do not depend on the strategy:
//! maps preserve input order and reductions must be associative and
//! commutative for the caller's operation.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    /// Whether this strategy will actually use worker threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    pub fn map_range<R, F>(self, range: Range<u64>, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(u64) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return range.into_par_iter().map(f).collect();
        }
        range.map(f).collect()
    }

    pub fn map_slice<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    pub fn filter_map_reduce<T, F, G>(self, range: Range<u64>, f: F, reduce: G) -> Option<T>
    where
        T: Send,
        F: Fn(u64) -> Option<T> + Sync + Send,
        G: Fn(T, T) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return range.into_par_iter().filter_map(f).reduce_with(reduce);
        }
        range.filter_map(f).reduce(reduce)
    }

    pub fn fold_reduce<A, I, F, G>(self, range: Range<u64>, identity: I, fold: F, reduce: G) -> A
    where
        A: Send,
        I: Fn() -> A + Sync + Send,
        F: Fn(A, u64) -> A + Sync + Send,
        G: Fn(A, A) -> A + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return range
                .into_par_iter()
                .fold(&identity, &fold)
                .reduce(&identity, &reduce);
        }
        // A single sequential accumulator never needs merging.
        let _ = reduce;
        range.fold(identity(), fold)
    }

    /// Runs `f` on a pool of `jobs` threads (`None` = global pool).
    pub fn install<R, F>(self, jobs: Option<usize>, f: F) -> R
    where
        R: Send,
        F: FnOnce() -> R + Send,
    {
        #[cfg(feature = "parallel")]
        if let (true, Some(j)) = (self.is_parallel(), jobs) {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(j.max(1))
                .build()
                .expect("thread pool");
            return pool.install(f);
        }
        let _ = jobs;
        f()
    }
}
