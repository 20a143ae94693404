//! Order-preserving map that runs on rayon when the `parallel` feature is on.

#[cfg(feature = "parallel")]
pub(crate) fn map_ordered<T, U, F>(items: Vec<T>, f: F, parallel: bool) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    if parallel {
        items.into_par_iter().map(f).collect()
    } else {
        items.into_iter().map(f).collect()
    }
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_ordered<T, U, F>(items: Vec<T>, f: F, _parallel: bool) -> Vec<U>
where
    F: Fn(T) -> U,
{
    items.into_iter().map(f).collect()
}
