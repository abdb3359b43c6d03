//! Deterministic work-splitting for Monte Carlo loops.
//!
//! Replications are partitioned into fixed-size chunks; chunk `i` always
//! runs on a ChaCha12 stream seeded by `splitmix64(base + (i+1)*gamma)`,
//! regardless of which thread picks it up. Per-chunk results are merged in
//! chunk order, so every estimate is invariant to the worker count.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

use crate::kernel::{chunk_seed, rng_from, RngSeed};

/// Replications per chunk. Fixed: changing it changes the sample stream.
pub const CHUNK_SIZE: u64 = 16_384;

/// A Monte Carlo estimate together with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloEstimate {
    pub estimate: f64,
    pub se: f64,
    pub reps: u64,
}

impl MonteCarloEstimate {
    /// Binomial estimate `hits/reps` with `se = sqrt(p(1-p)/reps)`.
    pub fn binomial(hits: u64, reps: u64) -> Self {
        let p = hits as f64 / reps as f64;
        MonteCarloEstimate {
            estimate: p,
            se: (p * (1.0 - p) / reps as f64).sqrt(),
            reps,
        }
    }

    pub fn from_moments(sum: f64, sumsq: f64, reps: u64) -> Self {
        let n = reps as f64;
        let mean = sum / n;
        let var = ((sumsq - n * mean * mean) / (n - 1.0)).max(0.0);
        MonteCarloEstimate {
            estimate: mean,
            se: (var / n).sqrt(),
            reps,
        }
    }
}

/// Runs `f(rng, chunk_len)` once per chunk and returns the results in chunk
/// order. `workers == 0` is treated as 1.
pub fn run_chunked<R, F>(total_reps: u64, seed: RngSeed, workers: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(&mut ChaCha12Rng, u64) -> R + Sync,
{
    let n_chunks = total_reps.div_ceil(CHUNK_SIZE).max(1) as usize;
    let chunk_len = |i: usize| -> u64 {
        let lo = i as u64 * CHUNK_SIZE;
        CHUNK_SIZE.min(total_reps - lo.min(total_reps))
    };

    let workers = workers.max(1).min(n_chunks);
    if workers == 1 {
        return (0..n_chunks)
            .map(|i| {
                let mut rng = rng_from(chunk_seed(seed, i as u64));
                f(&mut rng, chunk_len(i))
            })
            .collect();
    }

    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<R>>> = Mutex::new((0..n_chunks).map(|_| None).collect());
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= n_chunks {
                    break;
                }
                let mut rng = rng_from(chunk_seed(seed, i as u64));
                let r = f(&mut rng, chunk_len(i));
                slots.lock().unwrap()[i] = Some(r);
            });
        }
    });
    slots
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|r| r.expect("chunk result missing"))
        .collect()
}

/// Counts hits of a per-replication predicate; worker-invariant.
pub fn count_hits<F>(total_reps: u64, seed: RngSeed, workers: usize, hit: F) -> u64
where
    F: Fn(&mut ChaCha12Rng) -> bool + Sync,
{
    run_chunked(total_reps, seed, workers, |rng, len| {
        let mut c = 0u64;
        for _ in 0..len {
            if hit(rng) {
                c += 1;
            }
        }
        c
    })
    .into_iter()
    .sum()
}

/// Compensated (Kahan) summation; used wherever many small masses are added.
#[derive(Debug, Default, Clone, Copy)]
pub struct KahanSum {
    sum: f64,
    c: f64,
}

impl KahanSum {
    pub fn add(&mut self, x: f64) {
        let y = x - self.c;
        let t = self.sum + y;
        self.c = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum
    }
}
