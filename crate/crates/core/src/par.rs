//! Data-parallel reductions over index ranges.
//!
//! With the `parallel` feature the range is split into chunks processed on a rayon pool;
//! without it, the same chunks run in order on the calling thread. Each chunk yields a local
//! best under a strict total order, so the merged result never depends on the worker count.

use std::ops::Range;

/// Worker count requested for a solve; `None` uses the ambient pool.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Threads(pub Option<usize>);

impl Threads {
    pub fn effective(self) -> usize {
        #[cfg(feature = "parallel")]
        {
            self.0.unwrap_or_else(rayon::current_num_threads).max(1)
        }
        #[cfg(not(feature = "parallel"))]
        {
            let _ = self;
            1
        }
    }
}

/// Runs `f` on a pool with the requested worker count.
pub fn install<R: Send>(threads: Threads, f: impl FnOnce() -> R + Send) -> R {
    #[cfg(feature = "parallel")]
    {
        match threads.0 {
            Some(t) => match rayon::ThreadPoolBuilder::new()
                .num_threads(t.max(1))
                .build()
            {
                Ok(pool) => pool.install(f),
                Err(_) => f(),
            },
            None => f(),
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = threads;
        f()
    }
}

const CHUNKS_PER_WORKER: u64 = 8;

fn chunk_ranges(total: u64, workers: usize) -> Vec<Range<u64>> {
    if total == 0 {
        return Vec::new();
    }
    let pieces = (workers as u64 * CHUNKS_PER_WORKER).clamp(1, total);
    let step = total.div_ceil(pieces);
    (0..pieces)
        .map(|p| p * step..((p + 1) * step).min(total))
        .filter(|r| !r.is_empty())
        .collect()
}

/// Maps every chunk of `0..total` through `chunk` and keeps the minimum under `Ord`,
/// together with the sum of per-chunk work counters.
pub fn min_over_range<T, F>(total: u64, chunk: F) -> (Option<T>, u64)
where
    T: Ord + Send,
    F: Fn(Range<u64>) -> (Option<T>, u64) + Sync,
{
    let ranges = chunk_ranges(total, Threads::default().effective());
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        ranges
            .into_par_iter()
            .map(&chunk)
            .reduce(|| (None, 0), merge)
    }
    #[cfg(not(feature = "parallel"))]
    {
        ranges.into_iter().map(&chunk).fold((None, 0), merge)
    }
}

fn merge<T: Ord>(a: (Option<T>, u64), b: (Option<T>, u64)) -> (Option<T>, u64) {
    let best = match (a.0, b.0) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, y) => x.or(y),
    };
    (best, a.1 + b.1)
}

/// Order-preserving parallel map over `0..len`.
pub fn map_indices<T, F>(len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..len).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..len).map(f).collect()
    }
}
