//! Prior-predictive error probabilities for relative-belief inferences.
//!
//! *Bias against* ψ₀ is the prior probability of finding no evidence in
//! favor of ψ₀ when it is true (`RB(ψ₀|X) <= 1`); *bias in favor* is the
//! prior probability of finding no evidence against ψ₀ when the truth is at
//! least `delta_sep` away (`RB(ψ₀|X) >= 1`, sup over such alternatives).
//! Both depend only on the principle of evidence — recomputing the event
//! indicators from per-cell Bayes factors instead of rb changes nothing —
//! and both shrink to zero as the sample size grows. The Jeffreys–Lindley
//! sweep shows the diffuse-prior failure mode: rb at the null explodes while
//! bias in favor climbs toward one.

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::freq::{pvalue_location_normal, LocationNormalData};
use crate::kernel::{normal_pdf, normal_quantile, phi, phi_sf, RngSeed, RNG_NAME};
use crate::mc::{run_chunked, MonteCarloEstimate};
use crate::relbel::{
    cell_k, posterior_params_for_xbar, target_mass, BayesInferenceBase, GridTarget, MIN_PRIOR_MASS,
};

/// Candidate alternatives for the sup are spaced `max(delta, delta_sep/10)`
/// apart over the central prior interval of mass `1 - 1e-6`.
const SUPPORT_TAIL: f64 = 5e-7;

/// One ψ₀-cell of the belief grid together with its fixed prior mass.
#[derive(Debug, Clone, Copy)]
struct HypothesisCell {
    lo: f64,
    hi: f64,
    prior_mass: f64,
}

fn hypothesis_cell(
    base: &BayesInferenceBase,
    target: GridTarget,
    psi0: f64,
) -> Result<HypothesisCell> {
    if matches!(target, GridTarget::AbsValue) && psi0 < 0.0 {
        return Err(Error::domain(format!(
            "psi0 must be nonnegative for |μ|, got {psi0}"
        )));
    }
    let k = cell_k(psi0, base.delta);
    let lo = k as f64 * base.delta;
    let hi = (k + 1) as f64 * base.delta;
    let prior_mass = target_mass(target, lo, hi, &base.prior);
    if prior_mass < MIN_PRIOR_MASS {
        return Err(Error::domain(format!(
            "psi0 = {psi0} lies outside the prior grid support"
        )));
    }
    Ok(HypothesisCell { lo, hi, prior_mass })
}

/// Posterior mass of the hypothesis cell for a given sample mean.
fn posterior_cell_mass(
    base: &BayesInferenceBase,
    target: GridTarget,
    cell: &HypothesisCell,
    xbar: f64,
) -> f64 {
    let post = posterior_params_for_xbar(base, xbar);
    target_mass(target, cell.lo, cell.hi, &post)
}

/// Probability that a conditional-prior draw at `|μ| = psi` has positive sign.
fn sign_plus_probability(base: &BayesInferenceBase, psi: f64) -> f64 {
    let p = &base.prior;
    let plus = normal_pdf((psi - p.mean) / p.sd);
    let minus = normal_pdf((-psi - p.mean) / p.sd);
    plus / (plus + minus)
}

// ---------------------------------------------------------------------------
// Bias against H
// ---------------------------------------------------------------------------

/// `M(RB(ψ₀|X) <= 1 | ψ₀)`: each replication draws μ from the conditional
/// prior given `Ψ(μ) = ψ₀` (for `|μ|` a sign flip weighted by the prior
/// density), then `x̄ ~ N(μ, σ₀²/n)` and the ψ₀-cell rb is read off.
pub fn bias_against_hypothesis(
    base: &BayesInferenceBase,
    target: GridTarget,
    psi0: f64,
    reps: u64,
    seed: RngSeed,
    workers: usize,
) -> Result<MonteCarloEstimate> {
    let cell = hypothesis_cell(base, target, psi0)?;
    let se = base.data.mean_se()?;
    if reps == 0 {
        return Err(Error::domain("reps must be >= 1".to_string()));
    }
    let p_plus = match target {
        GridTarget::AbsValue => sign_plus_probability(base, psi0),
        GridTarget::Identity => 1.0,
    };
    let hits: u64 = run_chunked(reps, seed, workers, |rng, len| {
        let mut c = 0u64;
        for _ in 0..len {
            let mu = match target {
                GridTarget::Identity => psi0,
                GridTarget::AbsValue => {
                    if rng.gen::<f64>() < p_plus {
                        psi0
                    } else {
                        -psi0
                    }
                }
            };
            let z: f64 = StandardNormal.sample(rng);
            let xbar = mu + se * z;
            if posterior_cell_mass(base, target, &cell, xbar) <= cell.prior_mass {
                c += 1;
            }
        }
        c
    })
    .into_iter()
    .sum();
    Ok(MonteCarloEstimate::binomial(hits, reps))
}

// ---------------------------------------------------------------------------
// Bias in favor of H
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BiasInFavor {
    pub estimate: MonteCarloEstimate,
    /// Alternative ψ' achieving the supremum (NaN when no candidate exists).
    pub sup_attained_at: f64,
    pub candidates: usize,
    /// Set when `delta_sep` exceeded the whole candidate span, in which case
    /// the sup over the empty set is reported as 0.
    pub empty_candidates: bool,
}

fn candidate_alternatives(
    base: &BayesInferenceBase,
    target: GridTarget,
    psi0: f64,
    delta_sep: f64,
) -> Result<Vec<f64>> {
    if !(delta_sep > 0.0) {
        return Err(Error::domain(format!(
            "delta_sep must be positive, got {delta_sep}"
        )));
    }
    let spacing = base.delta.max(delta_sep / 10.0);
    let z_star = normal_quantile(1.0 - SUPPORT_TAIL)?;
    let (lo, hi) = match target {
        GridTarget::Identity => (
            base.prior.mean - z_star * base.prior.sd,
            base.prior.mean + z_star * base.prior.sd,
        ),
        GridTarget::AbsValue => (0.0, base.prior.mean.abs() + z_star * base.prior.sd),
    };
    let mut cands = Vec::new();
    // anchored at psi0 so the closest admissible alternatives are included
    let mut d = delta_sep;
    while psi0 + d <= hi || psi0 - d >= lo {
        if psi0 - d >= lo {
            cands.push(psi0 - d);
        }
        if psi0 + d <= hi {
            cands.push(psi0 + d);
        }
        d += spacing;
    }
    cands.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(cands)
}

/// `sup_{ψ': |ψ' - ψ₀| >= delta_sep} M(RB(ψ₀|X) >= 1 | ψ')` over a finite
/// candidate grid. All candidates share one set of replication draws, so the
/// reported sup is a deterministic function of the seed.
pub fn bias_in_favor_hypothesis(
    base: &BayesInferenceBase,
    target: GridTarget,
    psi0: f64,
    delta_sep: f64,
    reps: u64,
    seed: RngSeed,
    workers: usize,
) -> Result<BiasInFavor> {
    let cell = hypothesis_cell(base, target, psi0)?;
    let se = base.data.mean_se()?;
    if reps == 0 {
        return Err(Error::domain("reps must be >= 1".to_string()));
    }
    let cands = candidate_alternatives(base, target, psi0, delta_sep)?;
    if cands.is_empty() {
        return Ok(BiasInFavor {
            estimate: MonteCarloEstimate {
                estimate: 0.0,
                se: 0.0,
                reps,
            },
            sup_attained_at: f64::NAN,
            candidates: 0,
            empty_candidates: true,
        });
    }

    let mut best_hits = 0u64;
    let mut best_at = cands[0];
    match target {
        GridTarget::Identity => {
            // the in-favor event is an interval in xbar; count sorted common
            // draws against it per candidate
            let window = favor_window_identity(base, &cell);
            if let Some((a, b)) = window {
                let mut zs: Vec<f64> = run_chunked(reps, seed, workers, |rng, len| {
                    (0..len)
                        .map(|_| StandardNormal.sample(rng))
                        .collect::<Vec<f64>>()
                })
                .into_iter()
                .flatten()
                .collect();
                zs.sort_by(|x, y| x.partial_cmp(y).unwrap());
                for &c in &cands {
                    let zlo = (a - c) / se;
                    let zhi = (b - c) / se;
                    let lo_i = zs.partition_point(|&z| z < zlo);
                    let hi_i = zs.partition_point(|&z| z <= zhi);
                    let hits = (hi_i - lo_i) as u64;
                    if hits > best_hits {
                        best_hits = hits;
                        best_at = c;
                    }
                }
            }
        }
        GridTarget::AbsValue => {
            // direct indicator per draw; draws shared across candidates
            let draws: Vec<(f64, f64)> = run_chunked(reps, seed, workers, |rng, len| {
                (0..len)
                    .map(|_| (rng.gen::<f64>(), StandardNormal.sample(rng)))
                    .collect::<Vec<(f64, f64)>>()
            })
            .into_iter()
            .flatten()
            .collect();
            for &c in &cands {
                let p_plus = sign_plus_probability(base, c);
                let mut hits = 0u64;
                for &(u, z) in &draws {
                    let mu = if u < p_plus { c } else { -c };
                    let xbar = mu + se * z;
                    if posterior_cell_mass(base, target, &cell, xbar) >= cell.prior_mass {
                        hits += 1;
                    }
                }
                if hits > best_hits {
                    best_hits = hits;
                    best_at = c;
                }
            }
        }
    }

    Ok(BiasInFavor {
        estimate: MonteCarloEstimate::binomial(best_hits, reps),
        sup_attained_at: best_at,
        candidates: cands.len(),
        empty_candidates: false,
    })
}

/// For the identity target the posterior cell mass is unimodal in the
/// posterior mean, so `{x̄ : RB(ψ₀-cell) >= 1}` is an interval; locate it by
/// bisection. `None` when no sample mean produces evidence in favor.
fn favor_window_identity(base: &BayesInferenceBase, cell: &HypothesisCell) -> Option<(f64, f64)> {
    let n = base.data.n as f64;
    let s2 = base.data.sigma0 * base.data.sigma0;
    let t2 = base.prior.variance();
    let precision = n / s2 + 1.0 / t2;
    let s_post = (1.0 / precision).sqrt();
    let w = (n / s2) / precision;
    debug_assert!(w > 0.0);

    let mass_at = |m: f64| phi((cell.hi - m) / s_post) - phi((cell.lo - m) / s_post);
    let m_star = 0.5 * (cell.lo + cell.hi);
    if mass_at(m_star) < cell.prior_mass {
        return None;
    }

    let mut step = s_post;
    while mass_at(m_star - step) >= cell.prior_mass {
        step *= 2.0;
    }
    let (mut a, mut b) = (m_star - step, m_star);
    for _ in 0..100 {
        let mid = 0.5 * (a + b);
        if mass_at(mid) >= cell.prior_mass {
            b = mid;
        } else {
            a = mid;
        }
    }
    let m_lo = b;

    let mut step = s_post;
    while mass_at(m_star + step) >= cell.prior_mass {
        step *= 2.0;
    }
    let (mut a, mut b) = (m_star, m_star + step);
    for _ in 0..100 {
        let mid = 0.5 * (a + b);
        if mass_at(mid) >= cell.prior_mass {
            a = mid;
        } else {
            b = mid;
        }
    }
    let m_hi = a;

    // invert m = w·x̄ + (1-w)·prior_mean
    let x_of = |m: f64| (m - (1.0 - w) * base.prior.mean) / w;
    Some((x_of(m_lo), x_of(m_hi)))
}

// ---------------------------------------------------------------------------
// Report
// ---------------------------------------------------------------------------

/// Both hypothesis biases with the Monte Carlo provenance attached.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BiasReport {
    pub bias_against: MonteCarloEstimate,
    pub bias_in_favor: MonteCarloEstimate,
    /// The separation `delta_sep` defining "meaningfully false".
    pub delta: f64,
    pub reps: u64,
    pub seed: RngSeed,
    pub rng: String,
    pub sup_attained_at: f64,
    pub empty_candidates: bool,
}

pub fn bias_report(
    base: &BayesInferenceBase,
    target: GridTarget,
    psi0: f64,
    delta_sep: f64,
    reps: u64,
    seed: RngSeed,
    workers: usize,
) -> Result<BiasReport> {
    let against = bias_against_hypothesis(base, target, psi0, reps, seed, workers)?;
    let favor = bias_in_favor_hypothesis(base, target, psi0, delta_sep, reps, seed, workers)?;
    Ok(BiasReport {
        bias_against: against,
        bias_in_favor: favor.estimate,
        delta: delta_sep,
        reps,
        seed,
        rng: RNG_NAME.to_string(),
        sup_attained_at: favor.sup_attained_at,
        empty_candidates: favor.empty_candidates,
    })
}

// ---------------------------------------------------------------------------
// Estimation biases
// ---------------------------------------------------------------------------

/// Prior-averaged biases, with the plausible-region coverage identity
/// estimated from the same replications: `1 - bias_against` is the prior
/// probability that the true ψ lands in `Pl(X)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimationBias {
    pub bias_against: MonteCarloEstimate,
    pub bias_in_favor: MonteCarloEstimate,
    /// Direct Monte Carlo estimate of `M(ψ ∈ Pl(X))`.
    pub coverage: MonteCarloEstimate,
    pub outer_reps: u64,
    pub inner_reps: u64,
    pub delta: f64,
    pub seed: RngSeed,
    pub rng: String,
}

/// Averages the hypothesis biases over `ψ ~ Π_Ψ` (outer draws), with
/// `inner_reps` data replications per draw.
pub fn bias_estimation(
    base: &BayesInferenceBase,
    target: GridTarget,
    delta_sep: f64,
    outer_reps: u64,
    inner_reps: u64,
    seed: RngSeed,
    workers: usize,
) -> Result<EstimationBias> {
    if outer_reps == 0 || inner_reps == 0 {
        return Err(Error::domain(
            "outer_reps and inner_reps must be >= 1".to_string(),
        ));
    }
    let se = base.data.mean_se()?;
    let _ = workers; // outer loop is cheap; kept for interface symmetry

    let mut outer_rng = crate::kernel::rng_from(crate::kernel::splitmix64(seed.0));
    let mut against_sum = 0.0;
    let mut against_sq = 0.0;
    let mut cover_sum = 0.0;
    let mut cover_sq = 0.0;
    let mut favor_sum = 0.0;
    let mut favor_sq = 0.0;

    for j in 0..outer_reps {
        let zp: f64 = StandardNormal.sample(&mut outer_rng);
        let mu_true = base.prior.mean + base.prior.sd * zp;
        let psi_true = match target {
            GridTarget::AbsValue => mu_true.abs(),
            GridTarget::Identity => mu_true,
        };
        let cell = hypothesis_cell(base, target, psi_true)?;

        let mut inner_rng = crate::kernel::rng_from(crate::kernel::chunk_seed(seed, j + 1));
        let mut not_in_pl = 0u64;
        for _ in 0..inner_reps {
            let z: f64 = StandardNormal.sample(&mut inner_rng);
            let xbar = mu_true + se * z;
            if posterior_cell_mass(base, target, &cell, xbar) <= cell.prior_mass {
                not_in_pl += 1;
            }
        }
        let b = not_in_pl as f64 / inner_reps as f64;
        // same replications, complementary counter: psi_true ∈ Pl(X) iff
        // its cell carries evidence in favor
        let c = 1.0 - b;
        against_sum += b;
        against_sq += b * b;
        cover_sum += c;
        cover_sq += c * c;

        let favor = bias_in_favor_hypothesis(
            base,
            target,
            psi_true,
            delta_sep,
            inner_reps,
            RngSeed(crate::kernel::chunk_seed(seed, j + 1 + outer_reps)),
            1,
        )?;
        let f = favor.estimate.estimate;
        favor_sum += f;
        favor_sq += f * f;
    }

    let m = outer_reps;
    Ok(EstimationBias {
        bias_against: MonteCarloEstimate::from_moments(against_sum, against_sq, m),
        bias_in_favor: MonteCarloEstimate::from_moments(favor_sum, favor_sq, m),
        coverage: MonteCarloEstimate::from_moments(cover_sum, cover_sq, m),
        outer_reps,
        inner_reps,
        delta: delta_sep,
        seed,
        rng: RNG_NAME.to_string(),
    })
}

// ---------------------------------------------------------------------------
// Jeffreys–Lindley sweep
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LindleyRow {
    pub tau0: f64,
    /// rb of the μ₀ cell under the prior `N(μ₀, τ₀²)`.
    pub rb_mu0: f64,
    /// Posterior probability of `{rb(ψ) <= rb(μ₀)}` in the δ→0 limit; for
    /// the location-normal identity target the level set is exactly
    /// `{ψ <= μ₀} ∪ {ψ >= 2x̄ - μ₀}` (for `x̄ > μ₀`), whose limit as
    /// `τ₀² → ∞` is the two-sided p-value.
    pub strength_mu0: f64,
    pub pvalue: f64,
}

/// Sweeps the prior scale over `tau0_list` with the prior centered at μ₀,
/// recording how rb at the null diverges while the strength collapses to the
/// fixed p-value.
pub fn lindley_sweep(
    data: &LocationNormalData,
    mu0: f64,
    tau0_list: &[f64],
    delta: f64,
) -> Result<Vec<LindleyRow>> {
    if data.n == 0 {
        return Err(Error::domain("lindley sweep requires n >= 1".to_string()));
    }
    let pvalue = pvalue_location_normal(data, mu0);
    let mut rows = Vec::with_capacity(tau0_list.len());
    for &tau0 in tau0_list {
        let prior = crate::kernel::NormalParams::new(mu0, tau0)?;
        let base = BayesInferenceBase::new(*data, prior, delta)?;
        let cell = hypothesis_cell(&base, GridTarget::Identity, mu0)?;
        let post = posterior_params_for_xbar(&base, data.xbar);
        let rb = target_mass(GridTarget::Identity, cell.lo, cell.hi, &post) / cell.prior_mass;

        let reflect = 2.0 * data.xbar - mu0;
        let (lo, hi) = (mu0.min(reflect), mu0.max(reflect));
        let strength = phi((lo - post.mean) / post.sd) + phi_sf((hi - post.mean) / post.sd);

        rows.push(LindleyRow {
            tau0,
            rb_mu0: rb,
            strength_mu0: strength,
            pvalue,
        });
    }
    Ok(rows)
}
