//! Thin facade over rayon so the crate builds with a sequential fallback.
//!
//! With the `parallel` feature (default) the helpers dispatch to rayon;
//! without it they run plain iterators with identical semantics. All users
//! of this module produce per-index results that are combined in index
//! order, so outputs are bitwise independent of the thread count.

#[cfg(feature = "parallel")]
mod imp {
    use rayon::prelude::*;

    /// Map `f` over `0..n`, collecting results in index order.
    pub fn map_indexed<T: Send, F: Fn(usize) -> T + Sync + Send>(n: usize, f: F) -> Vec<T> {
        (0..n).into_par_iter().map(f).collect()
    }

    /// Apply `f` to each chunk of `data`, chunk index first.
    pub fn for_each_chunk_mut<T: Send, F: Fn(usize, &mut [T]) + Sync + Send>(
        data: &mut [T],
        chunk: usize,
        f: F,
    ) {
        data.par_chunks_mut(chunk)
            .enumerate()
            .for_each(|(i, c)| f(i, c));
    }

    pub fn is_parallel() -> bool {
        true
    }
}

#[cfg(not(feature = "parallel"))]
mod imp {
    pub fn map_indexed<T, F: Fn(usize) -> T>(n: usize, f: F) -> Vec<T> {
        (0..n).map(f).collect()
    }

    pub fn for_each_chunk_mut<T, F: Fn(usize, &mut [T])>(data: &mut [T], chunk: usize, f: F) {
        for (i, c) in data.chunks_mut(chunk).enumerate() {
            f(i, c);
        }
    }

    pub fn is_parallel() -> bool {
        false
    }
}

pub use imp::*;

/// Sequential reference implementations, kept available unconditionally so
/// the benchmark suite can compare against the parallel paths.
pub mod seq {
    pub fn map_indexed<T, F: Fn(usize) -> T>(n: usize, f: F) -> Vec<T> {
        (0..n).map(f).collect()
    }

    pub fn for_each_chunk_mut<T, F: Fn(usize, &mut [T])>(data: &mut [T], chunk: usize, f: F) {
        for (i, c) in data.chunks_mut(chunk).enumerate() {
            f(i, c);
        }
    }
}

/// Sum a slice of partial results in index order.
///
/// Keeping the reduction sequential (over per-slab partials) is what makes
/// norm computations reproducible across thread counts.
pub fn sum_in_order(parts: &[f64]) -> f64 {
    parts.iter().sum()
}
