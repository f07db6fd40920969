//! Thin dispatch layer between rayon and plain iterators. With the
//! `parallel` feature (default) the helpers fan out over rayon; without it
//! they run sequentially. Results are identical either way: sums are over
//! commutative monoids and "first" means lowest index.

#[cfg(feature = "parallel")]
pub(crate) fn sum_over<R, F>(n: usize, f: F) -> R
where
    R: Send + std::iter::Sum<R>,
    F: Fn(usize) -> R + Sync + Send,
{
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).sum()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn sum_over<R, F>(n: usize, f: F) -> R
where
    R: Send + std::iter::Sum<R>,
    F: Fn(usize) -> R + Sync + Send,
{
    (0..n).map(f).sum()
}

/// Lowest-index successful result.
#[cfg(feature = "parallel")]
pub(crate) fn first_over<T, F>(n: usize, f: F) -> Option<T>
where
    T: Send,
    F: Fn(usize) -> Option<T> + Sync + Send,
{
    use rayon::prelude::*;
    (0..n).into_par_iter().find_map_first(f)
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn first_over<T, F>(n: usize, f: F) -> Option<T>
where
    T: Send,
    F: Fn(usize) -> Option<T> + Sync + Send,
{
    (0..n).find_map(f)
}
