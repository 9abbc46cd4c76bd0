//! Data-parallel range scans with a sequential fallback.
//!
//! Every certification and comparison in this crate is a pure scan over an
//! integer range whose result merges associatively, so ranges can be
//! partitioned freely across workers. With the `parallel` feature (default)
//! the scans run on rayon; without it they degrade to plain loops. Witness
//! searches always report the least index, so results are identical in both
//! modes and for any worker count. The `*_seq` variants are always compiled
//! and exist as baselines for the benchmark suite.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// First `n` in `[lo, hi)` satisfying `pred`, or `None`.
pub fn find_first<F>(lo: u64, hi: u64, pred: F) -> Option<u64>
where
    F: Fn(u64) -> bool + Sync,
{
    #[cfg(feature = "parallel")]
    {
        (lo..hi).into_par_iter().find_first(|&n| pred(n))
    }
    #[cfg(not(feature = "parallel"))]
    {
        find_first_seq(lo, hi, pred)
    }
}

pub fn find_first_seq<F>(lo: u64, hi: u64, pred: F) -> Option<u64>
where
    F: Fn(u64) -> bool + Sync,
{
    (lo..hi).find(|&n| pred(n))
}

/// Checks `pred` on all of `[lo, hi)`; returns the least violating index.
pub fn check_all<F>(lo: u64, hi: u64, pred: F) -> Result<(), u64>
where
    F: Fn(u64) -> bool + Sync,
{
    match find_first(lo, hi, |n| !pred(n)) {
        None => Ok(()),
        Some(n) => Err(n),
    }
}

pub fn check_all_seq<F>(lo: u64, hi: u64, pred: F) -> Result<(), u64>
where
    F: Fn(u64) -> bool + Sync,
{
    match find_first_seq(lo, hi, |n| !pred(n)) {
        None => Ok(()),
        Some(n) => Err(n),
    }
}

/// Associative map-reduce over `[lo, hi)`.
///
/// `fold` must be associative and commutative up to the final value (all
/// uses here are exact sums, counters and set unions).
pub fn map_reduce<T, M, F>(lo: u64, hi: u64, identity: fn() -> T, map: M, fold: F) -> T
where
    T: Send,
    M: Fn(u64) -> T + Sync,
    F: Fn(T, T) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (lo..hi)
            .into_par_iter()
            .fold(identity, |acc, n| fold(acc, map(n)))
            .reduce(identity, &fold)
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_reduce_seq(lo, hi, identity, map, fold)
    }
}

pub fn map_reduce_seq<T, M, F>(lo: u64, hi: u64, identity: fn() -> T, map: M, fold: F) -> T
where
    T: Send,
    M: Fn(u64) -> T + Sync,
    F: Fn(T, T) -> T + Sync + Send,
{
    (lo..hi).fold(identity(), |acc, n| fold(acc, map(n)))
}

/// Counts occurrences of `key(n)` over `[lo, hi)`.
pub fn fold_counts<K, M>(lo: u64, hi: u64, key: M) -> std::collections::BTreeMap<K, u64>
where
    K: Ord + Send,
    M: Fn(u64) -> K + Sync,
{
    #[cfg(feature = "parallel")]
    {
        (lo..hi)
            .into_par_iter()
            .fold(std::collections::BTreeMap::new, |mut acc, n| {
                *acc.entry(key(n)).or_insert(0) += 1;
                acc
            })
            .reduce(std::collections::BTreeMap::new, |mut a, b| {
                for (k, c) in b {
                    *a.entry(k).or_insert(0) += c;
                }
                a
            })
    }
    #[cfg(not(feature = "parallel"))]
    {
        fold_counts_seq(lo, hi, key)
    }
}

pub fn fold_counts_seq<K, M>(lo: u64, hi: u64, key: M) -> std::collections::BTreeMap<K, u64>
where
    K: Ord + Send,
    M: Fn(u64) -> K + Sync,
{
    let mut acc = std::collections::BTreeMap::new();
    for n in lo..hi {
        *acc.entry(key(n)).or_insert(0) += 1;
    }
    acc
}

/// Ordered map over `[lo, hi)` into a vector.
pub fn map_collect<T, M>(lo: u64, hi: u64, map: M) -> Vec<T>
where
    T: Send,
    M: Fn(u64) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (lo..hi).into_par_iter().map(map).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (lo..hi).map(map).collect()
    }
}
