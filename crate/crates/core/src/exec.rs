//! Data-parallel trial execution.
//!
//! Monte-Carlo sweeps are embarrassingly parallel: every trial derives its
//! own RNG stream from `(master seed, axis, trial)`, so results are a pure
//! function of the trial index. [`run_indexed`] fans the index range out
//! over rayon when the `parallel` feature is on (the default) and falls back
//! to a plain sequential loop otherwise. Outputs come back in index order
//! either way, so downstream reductions are bit-identical across thread
//! counts.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map `f` over `0..n`, returning results in index order.
#[cfg(feature = "parallel")]
pub fn run_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..n).into_par_iter().map(f).collect()
}

/// Map `f` over `0..n`, returning results in index order.
#[cfg(not(feature = "parallel"))]
pub fn run_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    run_indexed_seq(n, f)
}

/// Sequential reference implementation of [`run_indexed`]; always available
/// so benchmarks can compare the two directly.
pub fn run_indexed_seq<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..n).map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn outputs_preserve_index_order() {
        let out = run_indexed(100, |i| i * i);
        for (i, v) in out.iter().enumerate() {
            assert_eq!(*v, i * i);
        }
    }

    #[test]
    fn parallel_and_sequential_agree() {
        let a = run_indexed(257, |i| (i as f64).sin());
        let b = run_indexed_seq(257, |i| (i as f64).sin());
        assert_eq!(a, b);
    }

    #[test]
    fn empty_range_is_fine() {
        let out: Vec<u8> = run_indexed(0, |_| 0u8);
        assert!(out.is_empty());
    }
}
