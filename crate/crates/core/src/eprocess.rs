//! e-values, multiplicative e-processes and optional stopping.
//!
//! For `H0: μ = μ0` each observation contributes the power e-value
//! `a · p^(a-1)` computed from its own two-sided p-value; the running product
//! over independent observations is a discrete-time super-martingale with
//! mean at most one, so by Ville's inequality the process crosses `1/α` with
//! probability at most `α` no matter when sampling stops.

use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{phi_sf, RngSeed};
use crate::mc::{count_hits, run_chunked, MonteCarloEstimate};

/// State of a multiplicative e-process with rejection threshold `1/alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EProcessState {
    /// Product of the e-values seen so far; starts at 1.
    pub running_product: f64,
    pub step_count: usize,
    pub alpha: f64,
    /// Set at the first step where the product reached `1/alpha`.
    pub stopped_at: Option<usize>,
}

impl EProcessState {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::domain(format!(
                "alpha must lie in (0,1), got {alpha}"
            )));
        }
        Ok(EProcessState {
            running_product: 1.0,
            step_count: 0,
            alpha,
            stopped_at: None,
        })
    }

    pub fn threshold(&self) -> f64 {
        1.0 / self.alpha
    }

    pub fn has_stopped(&self) -> bool {
        self.stopped_at.is_some()
    }
}

/// The power e-value `a · p^(a-1)` for `a ∈ (0,1)`.
///
/// Integrates to one over `p ~ U(0,1)`, hence is an e-variable whenever `p`
/// is a valid p-value. `p = 0` cannot occur for finite data under the normal
/// model; it is reported as a divergence error standing in for the
/// +infinity sentinel.
pub fn e_value_power(pvalue: f64, a: f64) -> Result<f64> {
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::domain(format!("a must lie in (0,1), got {a}")));
    }
    if pvalue == 0.0 {
        return Err(Error::DivergentEValue);
    }
    if !(pvalue > 0.0 && pvalue <= 1.0) {
        return Err(Error::domain(format!(
            "pvalue must lie in (0,1], got {pvalue}"
        )));
    }
    Ok(a * pvalue.powf(a - 1.0))
}

/// Multiplies one e-value into the process. Rejected once `stopped_at` is
/// set; the first crossing of `1/alpha` records the stopping time.
pub fn update(state: &EProcessState, e_value: f64) -> Result<EProcessState> {
    if let Some(step) = state.stopped_at {
        return Err(Error::AlreadyStopped(step));
    }
    if !(e_value >= 0.0) {
        return Err(Error::domain(format!(
            "e-value must be nonnegative, got {e_value}"
        )));
    }
    let mut next = *state;
    next.running_product = state.running_product * e_value;
    next.step_count = state.step_count + 1;
    if next.running_product >= next.threshold() {
        next.stopped_at = Some(next.step_count);
    }
    Ok(next)
}

/// Fraction of `H0`-true replications whose e-process ever crosses `1/alpha`
/// within `max_steps` observations (one observation per step, each converted
/// through its own two-sided p-value).
#[allow(clippy::too_many_arguments)] // mirrors the operation's parameter list
pub fn simulate_sequential_type1(
    alpha: f64,
    a: f64,
    _mu0: f64,
    sigma0: f64,
    max_steps: usize,
    reps: u64,
    seed: RngSeed,
    workers: usize,
) -> Result<MonteCarloEstimate> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::domain(format!(
            "alpha must lie in (0,1), got {alpha}"
        )));
    }
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::domain(format!("a must lie in (0,1), got {a}")));
    }
    if !(sigma0 > 0.0) {
        return Err(Error::domain(format!(
            "sigma0 must be positive, got {sigma0}"
        )));
    }
    if max_steps == 0 || reps == 0 {
        return Err(Error::domain("max_steps and reps must be >= 1".to_string()));
    }
    let threshold = 1.0 / alpha;
    // Under H0 the standardized observation (x - mu0)/sigma0 is N(0,1), so
    // mu0 and sigma0 cancel out of the per-step p-value.
    let hits = count_hits(reps, seed, workers, |rng| {
        let mut product = 1.0f64;
        for _ in 0..max_steps {
            let z: f64 = StandardNormal.sample(rng);
            let p = 2.0 * phi_sf(z.abs());
            product *= a * p.powf(a - 1.0);
            if product >= threshold {
                return true;
            }
        }
        false
    });
    Ok(MonteCarloEstimate::binomial(hits, reps))
}

/// Monte-Carlo mean (with standard error) of the unstopped product at each
/// step `1..=steps` under `H0`.
pub fn product_mean_profile(
    a: f64,
    steps: usize,
    reps: u64,
    seed: RngSeed,
    workers: usize,
) -> Result<Vec<MonteCarloEstimate>> {
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::domain(format!("a must lie in (0,1), got {a}")));
    }
    let chunks = run_chunked(reps, seed, workers, |rng, len| {
        let mut sum = vec![0.0f64; steps];
        let mut sumsq = vec![0.0f64; steps];
        for _ in 0..len {
            let mut product = 1.0f64;
            for (s, sq) in sum.iter_mut().zip(sumsq.iter_mut()) {
                let z: f64 = StandardNormal.sample(rng);
                let p = 2.0 * phi_sf(z.abs());
                product *= a * p.powf(a - 1.0);
                *s += product;
                *sq += product * product;
            }
        }
        (sum, sumsq)
    });
    let mut sum = vec![0.0f64; steps];
    let mut sumsq = vec![0.0f64; steps];
    for (cs, cq) in chunks {
        for i in 0..steps {
            sum[i] += cs[i];
            sumsq[i] += cq[i];
        }
    }
    Ok((0..steps)
        .map(|i| MonteCarloEstimate::from_moments(sum[i], sumsq[i], reps))
        .collect())
}

/// Monte-Carlo mean of the product stopped at the first crossing of
/// `1/alpha` (or at `max_steps`); checks the optional-stopping bound.
pub fn stopped_product_mean(
    alpha: f64,
    a: f64,
    max_steps: usize,
    reps: u64,
    seed: RngSeed,
    workers: usize,
) -> Result<MonteCarloEstimate> {
    if !(alpha > 0.0 && alpha < 1.0) || !(a > 0.0 && a < 1.0) {
        return Err(Error::domain("alpha and a must lie in (0,1)".to_string()));
    }
    let threshold = 1.0 / alpha;
    let chunks = run_chunked(reps, seed, workers, |rng, len| {
        let mut sum = 0.0f64;
        let mut sumsq = 0.0f64;
        for _ in 0..len {
            let mut product = 1.0f64;
            for _ in 0..max_steps {
                let z: f64 = StandardNormal.sample(rng);
                let p = 2.0 * phi_sf(z.abs());
                product *= a * p.powf(a - 1.0);
                if product >= threshold {
                    break;
                }
            }
            sum += product;
            sumsq += product * product;
        }
        (sum, sumsq)
    });
    let (sum, sumsq) = chunks
        .into_iter()
        .fold((0.0, 0.0), |(s, q), (cs, cq)| (s + cs, q + cq));
    Ok(MonteCarloEstimate::from_moments(sum, sumsq, reps))
}
