//! Outer-loop execution strategy.
//!
//! With the `parallel` feature (on by default) the embarrassingly parallel
//! loops — coloring repetitions, guess-vector sweeps, per-rank transforms —
//! run on rayon. Without the feature everything runs sequentially. The
//! sequential variants stay compiled under both configurations so benches can
//! compare the two strategies on identical workloads.
//!
//! All helpers preserve sequential semantics exactly: `find_map_first` returns
//! the result for the *smallest* index that yields `Some`, no matter how the
//! work was scheduled, so solvers that promise "first success in enumeration
//! order" stay deterministic under parallelism.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// True when this build routes eligible loops through rayon.
pub fn parallel_enabled() -> bool {
    cfg!(feature = "parallel")
}

/// Applies `f` to `0..n` and returns the result for the smallest index that
/// yields `Some`, matching [`find_map_first_seq`] exactly.
pub fn find_map_first<T, F>(n: u64, f: F) -> Option<T>
where
    T: Send,
    F: Fn(u64) -> Option<T> + Sync,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().find_map_first(|i| f(i))
    }
    #[cfg(not(feature = "parallel"))]
    {
        find_map_first_seq(n, f)
    }
}

/// Sequential twin of [`find_map_first`]; also the code path used when the
/// `parallel` feature is disabled.
pub fn find_map_first_seq<T, F>(n: u64, f: F) -> Option<T>
where
    F: Fn(u64) -> Option<T>,
{
    (0..n).find_map(f)
}

/// Maps `0..n` through `f`, preserving index order in the output.
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(|i| f(i)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_indexed_seq(n, f)
    }
}

/// Sequential twin of [`map_indexed`].
pub fn map_indexed_seq<T, F>(n: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..n).map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn find_map_first_returns_smallest_hit() {
        // Several indices qualify; the smallest must win under either strategy.
        let hit = |i: u64| (i % 7 == 3).then_some(i);
        assert_eq!(find_map_first(100, hit), Some(3));
        assert_eq!(find_map_first_seq(100, hit), Some(3));
        assert_eq!(find_map_first(3, hit), None);
        assert_eq!(find_map_first(0, hit), None);
    }

    #[test]
    fn map_indexed_preserves_order() {
        let sq = |i: usize| i * i;
        assert_eq!(map_indexed(6, sq), map_indexed_seq(6, sq));
        assert_eq!(map_indexed(6, sq), vec![0, 1, 4, 9, 16, 25]);
    }
}
