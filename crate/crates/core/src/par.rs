//! Thread pool for index-range sweeps, sized by `TF_THREADS` when set.

use std::sync::OnceLock;

use rayon::{ThreadPool, ThreadPoolBuilder};

fn pool() -> &'static ThreadPool {
    static POOL: OnceLock<ThreadPool> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut b = ThreadPoolBuilder::new();
        if let Some(n) = std::env::var("TF_THREADS").ok().and_then(|s| s.parse::<usize>().ok()).filter(|&n| n > 0) {
            b = b.num_threads(n);
        }
        b.build().expect("thread pool")
    })
}

/// Map `op` over `0..n` in parallel, results in index order.
pub fn map_range<T: Send>(n: usize, op: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
    use rayon::prelude::*;
    pool().install(|| (0..n).into_par_iter().map(op).collect())
}
