//! Trial-parallel harness. Results come back ordered by trial index, so
//! aggregation is independent of scheduling.

use crate::error::{Error, Result};
use crate::rng::trial_seed;
use rayon::prelude::*;

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "PRIMLOCAL_THREADS";

pub fn thread_cap() -> Option<usize> {
    std::env::var(THREADS_ENV).ok()?.trim().parse().ok().filter(|&t| t > 0)
}

/// Runs `f(index, seed)` for `count` trials with seeds derived from `base`.
pub fn run_trials<T, F>(count: usize, base: u64, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize, u64) -> Result<T> + Sync,
{
    let job = || {
        (0..count)
            .into_par_iter()
            .map(|i| f(i, trial_seed(base, i as u64)))
            .collect::<Result<Vec<T>>>()
    };
    match thread_cap() {
        Some(threads) => rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?
            .install(job),
        None => job(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordered_by_index_with_derived_seeds() {
        let out = run_trials(16, 5, |i, s| Ok((i, s))).unwrap();
        for (i, &(j, s)) in out.iter().enumerate() {
            assert_eq!(i, j);
            assert_eq!(s, trial_seed(5, i as u64));
        }
    }

    #[test]
    fn first_error_propagates() {
        let r = run_trials(4, 0, |i, _| if i == 2 { Err(Error::Unrooted) } else { Ok(i) });
        assert_eq!(r, Err(Error::Unrooted));
    }
}
