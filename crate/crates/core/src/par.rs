//! Batch execution over independent work items.
//!
//! With the `parallel` feature the work is spread over the rayon pool;
//! without it, or with [`Exec::Sequential`], items run in order on the
//! calling thread. Output order always matches input order.

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// Whether `Parallel` actually fans out in this build.
    pub const PARALLEL_AVAILABLE: bool = cfg!(feature = "parallel");

    pub fn map<T, U, F>(self, items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> U + Sync + Send,
    {
        match self {
            Exec::Sequential => items.iter().map(f).collect(),
            Exec::Parallel => parallel_map(items, f),
        }
    }
}

#[cfg(feature = "parallel")]
fn parallel_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn parallel_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    items.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        let items: Vec<u64> = (0..500).collect();
        let seq = Exec::Sequential.map(&items, |x| x * x);
        let par = Exec::Parallel.map(&items, |x| x * x);
        assert_eq!(seq, par);
        assert_eq!(seq[499], 499 * 499);
    }
}
