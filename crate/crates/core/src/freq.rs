//! p-values and confidence regions for the location-normal model, plus the
//! two-stage rejection experiment showing what optional continuation does to
//! a fixed-cutoff p-value procedure.

use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::IntervalSet;
use crate::kernel::{normal_quantile, phi_sf, RngSeed};
use crate::mc::{count_hits, MonteCarloEstimate};

/// Summary of an i.i.d. normal sample with known standard deviation:
/// sample size, sample mean and the known `sigma0`.
///
/// `n = 0` encodes "no data yet" and is accepted so that prior-only belief
/// grids can be formed; operations that need data reject it explicitly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LocationNormalData {
    pub n: u64,
    pub xbar: f64,
    pub sigma0: f64,
}

impl LocationNormalData {
    pub fn new(n: u64, xbar: f64, sigma0: f64) -> Result<Self> {
        if !xbar.is_finite() {
            return Err(Error::domain(format!("xbar must be finite, got {xbar}")));
        }
        if !(sigma0.is_finite() && sigma0 > 0.0) {
            return Err(Error::domain(format!(
                "sigma0 must be positive, got {sigma0}"
            )));
        }
        Ok(LocationNormalData { n, xbar, sigma0 })
    }

    /// Standard error of the sample mean, `sigma0 / sqrt(n)`.
    pub fn mean_se(&self) -> Result<f64> {
        if self.n == 0 {
            return Err(Error::domain("operation requires n >= 1".to_string()));
        }
        Ok(self.sigma0 / (self.n as f64).sqrt())
    }
}

/// Two-sided p-value `2(1 - Φ(√n |x̄ - μ₀| / σ₀))` for `H0: μ = μ₀`.
pub fn pvalue_location_normal(data: &LocationNormalData, mu0: f64) -> f64 {
    if data.n == 0 {
        return 1.0;
    }
    let t = (data.n as f64).sqrt() * (data.xbar - mu0).abs() / data.sigma0;
    2.0 * phi_sf(t)
}

/// The `(1-α)` confidence interval `x̄ ± z_{1-α/2} σ₀/√n`, returned as a
/// single half-open interval. Dual to the p-value: `μ₀` lies inside exactly
/// when `pvalue(x, μ₀) > α`.
pub fn confidence_interval(data: &LocationNormalData, alpha: f64) -> Result<IntervalSet> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::domain(format!(
            "alpha must lie in (0,1), got {alpha}"
        )));
    }
    let se = data.mean_se()?;
    let z = normal_quantile(1.0 - alpha / 2.0)?;
    IntervalSet::single(data.xbar - z * se, data.xbar + z * se)
}

/// Monte-Carlo estimate of `P(A) + P(Aᶜ ∩ B)` under `H0`, where `A` rejects
/// at level `alpha` on the first `n1` observations and `B` rejects on the
/// pooled `n1 + n2` observations.
///
/// Each replication draws the two stage means through their standardized
/// sufficient statistics: `Z1` for the first-stage mean and the pooled
/// statistic `(√n1·Z1 + √n2·Z2)/√(n1+n2)`. `n2 = 0` degenerates to the
/// single-stage test and recovers `alpha` exactly up to Monte Carlo error.
pub fn two_stage_rejection_prob(
    alpha: f64,
    n1: u64,
    n2: u64,
    reps: u64,
    seed: RngSeed,
    workers: usize,
) -> Result<MonteCarloEstimate> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::domain(format!(
            "alpha must lie in (0,1), got {alpha}"
        )));
    }
    if n1 == 0 {
        return Err(Error::domain("n1 must be >= 1".to_string()));
    }
    if reps == 0 {
        return Err(Error::domain("reps must be >= 1".to_string()));
    }
    let zcrit = normal_quantile(1.0 - alpha / 2.0)?;
    let w1 = (n1 as f64).sqrt();
    let w2 = (n2 as f64).sqrt();
    let wp = ((n1 + n2) as f64).sqrt();

    let hits = count_hits(reps, seed, workers, |rng| {
        let z1: f64 = StandardNormal.sample(rng);
        let z2: f64 = StandardNormal.sample(rng);
        if z1.abs() >= zcrit {
            return true; // evidence against found at the first stage
        }
        let zpool = (w1 * z1 + w2 * z2) / wp;
        zpool.abs() >= zcrit
    });
    Ok(MonteCarloEstimate::binomial(hits, reps))
}
