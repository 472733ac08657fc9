//! Order-preserving map over grid cells, data-parallel when the `parallel`
//! feature is enabled and sequential otherwise.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Execution {
    Sequential,
    /// Work-stealing pool; `jobs = None` uses the global pool, `Some(n)` a
    /// dedicated pool of `n` threads.
    Parallel { jobs: Option<usize> },
}

impl Default for Execution {
    fn default() -> Self {
        Execution::Parallel { jobs: None }
    }
}

impl Execution {
    /// Maps `f` over `items`; the output is in input order for every mode.
    pub fn map<T, R, F>(&self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match *self {
            Execution::Sequential => items.iter().map(f).collect(),
            Execution::Parallel { jobs } => parallel_map(items, f, jobs),
        }
    }
}

#[cfg(feature = "parallel")]
fn parallel_map<T, R, F>(items: &[T], f: F, jobs: Option<usize>) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    let run = || items.par_iter().map(&f).collect();
    match jobs {
        Some(n) if n > 0 => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(run),
            Err(_) => run(),
        },
        _ => run(),
    }
}

#[cfg(not(feature = "parallel"))]
fn parallel_map<T, R, F>(items: &[T], f: F, _jobs: Option<usize>) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    items.iter().map(f).collect()
}
