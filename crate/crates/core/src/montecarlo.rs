//! Batched, seeded Monte Carlo and parallel exact counting.
//!
//! Trials are split into fixed batches of [`BATCH`]; batch `i` draws from
//! `Prng::new(seed, i)`. Counts are summed, so the result does not depend on
//! the worker count.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rng::Prng;

pub const BATCH: u64 = 4096;

fn pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Parameter(format!("cannot start {jobs} workers: {e}")))
}

/// Number of successful trials out of `trials`.
pub fn count_successes<F>(trials: u64, seed: u64, jobs: usize, trial: F) -> Result<u64>
where
    F: Fn(&mut Prng) -> Result<bool> + Sync,
{
    if jobs == 0 {
        return Err(Error::Parameter("jobs must be at least 1".into()));
    }
    let batches = trials.div_ceil(BATCH);
    let run_batch = |b: u64| -> Result<u64> {
        let mut prng = Prng::new(seed, b);
        let size = BATCH.min(trials - b * BATCH);
        let mut hits = 0u64;
        for _ in 0..size {
            hits += trial(&mut prng)? as u64;
        }
        Ok(hits)
    };
    if jobs == 1 {
        (0..batches).map(run_batch).sum()
    } else {
        pool(jobs)?.install(|| (0..batches).into_par_iter().map(run_batch).sum())
    }
}

/// `Σ_{i < count} f(i)`, split across `jobs` workers.
pub fn sum_over<F>(count: u64, jobs: usize, f: F) -> Result<u64>
where
    F: Fn(u64) -> u64 + Sync,
{
    if jobs == 0 {
        return Err(Error::Parameter("jobs must be at least 1".into()));
    }
    if jobs == 1 {
        Ok((0..count).map(&f).sum())
    } else {
        Ok(pool(jobs)?.install(|| (0..count).into_par_iter().map(&f).sum()))
    }
}

/// `3 sqrt(p (1 - p) / trials)`.
pub fn three_sigma(p: f64, trials: u64) -> f64 {
    3.0 * (p * (1.0 - p) / trials as f64).sqrt()
}
