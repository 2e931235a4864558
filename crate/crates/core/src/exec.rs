//! Sequential / parallel switch for the range sweeps used throughout the crate.
//!
//! With the `parallel` feature (default) `Execution::Parallel` fans work out on
//! the rayon global pool. Without it, `Parallel` silently runs sequentially so
//! callers never need their own `cfg`s. Results are always returned in range
//! order.

use std::ops::RangeInclusive;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
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
    /// True when work will really be spread over threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }

    pub fn map<T, F>(self, range: RangeInclusive<u64>, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(u64) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return range.into_par_iter().map(f).collect();
        }
        range.map(f).collect()
    }

    pub fn try_map<T, F>(self, range: RangeInclusive<u64>, f: F) -> Result<Vec<T>>
    where
        T: Send,
        F: Fn(u64) -> Result<T> + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return range.into_par_iter().map(f).collect();
        }
        range.map(f).collect()
    }

    pub fn try_flat_map<T, F>(self, range: RangeInclusive<u64>, f: F) -> Result<Vec<T>>
    where
        T: Send,
        F: Fn(u64) -> Result<Vec<T>> + Sync + Send,
    {
        let chunks = self.try_map(range, f)?;
        Ok(chunks.into_iter().flatten().collect())
    }

    /// Sum of `f` over the range, failing on the first error or on overflow.
    pub fn try_sum<F>(self, range: RangeInclusive<u64>, f: F) -> Result<u64>
    where
        F: Fn(u64) -> Result<u64> + Sync + Send,
    {
        let parts = self.try_map(range, f)?;
        parts.into_iter().try_fold(0u64, |acc, x| {
            acc.checked_add(x)
                .ok_or(crate::error::Error::Overflow("sweep sum"))
        })
    }

    /// Apply `f` to each item of a slice, preserving order.
    pub fn map_slice<S, T, F>(self, items: &[S], f: F) -> Vec<T>
    where
        S: Sync,
        T: Send,
        F: Fn(&S) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_modes_agree_and_keep_order() {
        let seq = Execution::Sequential.map(1..=1000, |n| n * n);
        let par = Execution::Parallel.map(1..=1000, |n| n * n);
        assert_eq!(seq, par);
        assert_eq!(seq[9], 100);
    }

    #[test]
    fn try_sum_reports_overflow() {
        let r = Execution::Sequential.try_sum(1..=3, |_| Ok(u64::MAX / 2));
        assert!(r.is_err());
    }
}
