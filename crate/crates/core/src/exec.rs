//! Trial-level execution: data-parallel when the `parallel` feature is on,
//! sequential otherwise. Results always come back in index order.

/// How a batch of independent trials is executed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    /// Global thread pool when parallelism is compiled in.
    #[default]
    Auto,
    Sequential,
    /// A dedicated pool with this many threads; `1` means sequential.
    Threads(usize),
}

impl Execution {
    /// From a `--jobs` style count, where `0` means automatic.
    pub fn from_jobs(jobs: usize) -> Self {
        match jobs {
            0 => Execution::Auto,
            1 => Execution::Sequential,
            n => Execution::Threads(n),
        }
    }

    pub fn is_parallel(&self) -> bool {
        cfg!(feature = "parallel") && !matches!(self, Execution::Sequential | Execution::Threads(1))
    }

    /// `f(0), .., f(count − 1)` in order.
    pub fn map<T, F>(self, count: u64, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(u64) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        {
            use rayon::prelude::*;
            match self {
                Execution::Auto => return (0..count).into_par_iter().map(f).collect(),
                Execution::Threads(n) if n > 1 => {
                    if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(n).build() {
                        return pool.install(|| (0..count).into_par_iter().map(&f).collect());
                    }
                }
                _ => {}
            }
        }
        (0..count).map(f).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        for exec in [
            Execution::Auto,
            Execution::Sequential,
            Execution::Threads(3),
            Execution::from_jobs(1),
        ] {
            assert_eq!(exec.map(100, |i| i * i), (0..100).map(|i| i * i).collect::<Vec<_>>());
        }
        assert_eq!(Execution::from_jobs(0), Execution::Auto);
        assert!(!Execution::Sequential.is_parallel());
    }
}
