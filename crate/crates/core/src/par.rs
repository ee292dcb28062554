//! Execution strategy for the data-parallel scans.
//!
//! With the `parallel` feature (on by default) [`Execution::Parallel`] fans
//! work out over rayon; without it every strategy runs sequentially. Results
//! are always merged in input order, so output never depends on scheduling.

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
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
    /// Maps `f` over `items` and concatenates the outputs in item order.
    pub(crate) fn flat_map<T, U, F>(self, items: Vec<T>, f: F) -> Vec<U>
    where
        T: Send,
        U: Send,
        F: Fn(T) -> Vec<U> + Send + Sync,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => {
                use rayon::prelude::*;
                items.into_par_iter().flat_map_iter(f).collect()
            }
            _ => items.into_iter().flat_map(f).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        let items: Vec<u32> = (0..1000).collect();
        let f = |i: u32| vec![i, i * 2];
        let seq = Execution::Sequential.flat_map(items.clone(), f);
        let par = Execution::Parallel.flat_map(items, f);
        assert_eq!(seq, par);
    }
}
