//! Map helpers that run on the rayon pool when the `parallel` feature is
//! enabled and fall back to plain iteration otherwise. Output order always
//! matches input order, so results are identical in both builds.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

pub(crate) fn try_map_collect<T, U, F>(items: Vec<T>, f: F) -> crate::Result<Vec<U>>
where
    T: Send,
    U: Send,
    F: Fn(T) -> crate::Result<U> + Send + Sync,
{
    #[cfg(feature = "parallel")]
    {
        items.into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.into_iter().map(f).collect()
    }
}
