//! Pure-likelihood measures: relative likelihood, likelihood regions, and the
//! profile/integrated treatment of the nuisance sign in `ψ = |μ|`, plus the
//! scale-normal prediction example where profiling misbehaves.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::freq::LocationNormalData;
use crate::interval::IntervalSet;

/// Relative-likelihood threshold for "very strong" support (ratio 8).
pub const SUPPORT_RATIO_STRONG: f64 = 8.0;
/// Relative-likelihood threshold for "quite strong" support (ratio 32).
pub const SUPPORT_RATIO_MODERATE: f64 = 32.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveKind {
    Plain,
    Relative,
    Profile,
    Integrated,
}

impl CurveKind {
    pub fn label(self) -> &'static str {
        match self {
            CurveKind::Plain => "plain",
            CurveKind::Relative => "relative",
            CurveKind::Profile => "profile",
            CurveKind::Integrated => "integrated",
        }
    }
}

/// A likelihood curve sampled on an equally spaced ψ grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LikelihoodCurve {
    pub psi: Vec<f64>,
    pub value: Vec<f64>,
    pub kind: CurveKind,
}

impl LikelihoodCurve {
    /// Grid ψ with the largest value; ties broken toward the smallest ψ.
    pub fn argmax(&self) -> f64 {
        let mut best = 0usize;
        for i in 1..self.value.len() {
            if self.value[i] > self.value[best] {
                best = i;
            }
        }
        self.psi[best]
    }
}

/// Default ψ grid `[0, |x̄| + 6σ₀/√n]` with the given spacing.
pub fn default_psi_grid(data: &LocationNormalData, delta: f64) -> Result<Vec<f64>> {
    if !(delta > 0.0) {
        return Err(Error::domain(format!(
            "grid spacing must be positive, got {delta}"
        )));
    }
    let hi = data.xbar.abs() + 6.0 * data.mean_se()?;
    let k = (hi / delta).ceil() as usize;
    Ok((0..=k).map(|i| i as f64 * delta).collect())
}

/// Relative likelihood `exp(-n (x̄-μ)² / 2σ₀²)`; equals 1 exactly at the
/// MLE `μ = x̄`.
pub fn relative_likelihood_location(data: &LocationNormalData, mu: f64) -> f64 {
    let n = data.n as f64;
    (-n * (data.xbar - mu) * (data.xbar - mu) / (2.0 * data.sigma0 * data.sigma0)).exp()
}

/// Likelihood region `{μ : L_rel(μ) >= 1/r}`, the closed-form interval
/// `x̄ ± σ₀ sqrt(2 ln r / n)`.
pub fn likelihood_region(data: &LocationNormalData, r: f64) -> Result<IntervalSet> {
    if !(r > 1.0) {
        return Err(Error::domain(format!(
            "likelihood ratio r must exceed 1, got {r}"
        )));
    }
    if data.n == 0 {
        return Err(Error::domain(
            "likelihood region requires n >= 1".to_string(),
        ));
    }
    let half = data.sigma0 * (2.0 * r.ln() / data.n as f64).sqrt();
    IntervalSet::single(data.xbar - half, data.xbar + half)
}

/// Profile likelihood of `ψ = |μ|`: `exp(-n (|x̄|-ψ)² / 2σ₀²)`.
pub fn profile_likelihood_abs(data: &LocationNormalData, psi: f64) -> Result<f64> {
    if !(psi >= 0.0) {
        return Err(Error::domain(format!("psi must be nonnegative, got {psi}")));
    }
    let n = data.n as f64;
    let d = data.xbar.abs() - psi;
    Ok((-n * d * d / (2.0 * data.sigma0 * data.sigma0)).exp())
}

/// Integrated likelihood of `ψ = |μ|` with conditional sign prior
/// `P(sgn = +1 | ψ) = p_sign`:
/// `p·exp(-n(x̄-ψ)²/2σ₀²) + (1-p)·exp(-n(x̄+ψ)²/2σ₀²)`.
pub fn integrated_likelihood_abs(data: &LocationNormalData, psi: f64, p_sign: f64) -> Result<f64> {
    if !(psi >= 0.0) {
        return Err(Error::domain(format!("psi must be nonnegative, got {psi}")));
    }
    if !(p_sign > 0.0 && p_sign < 1.0) {
        return Err(Error::domain(format!(
            "p_sign must lie in (0,1), got {p_sign}"
        )));
    }
    let n = data.n as f64;
    let s2 = 2.0 * data.sigma0 * data.sigma0;
    let plus = (-n * (data.xbar - psi) * (data.xbar - psi) / s2).exp();
    let minus = (-n * (data.xbar + psi) * (data.xbar + psi) / s2).exp();
    Ok(p_sign * plus + (1.0 - p_sign) * minus)
}

/// Sampling density of `|x̄|` evaluated at the observed `|x̄|` when the true
/// parameter is `(ψ, sgn)`:
///
/// `√n/(√(2π)σ₀) · [exp(-n(|x̄|-sgn·ψ)²/2σ₀²) + exp(-n(|x̄|+sgn·ψ)²/2σ₀²)]`
///
/// This is a genuine density in `|x̄|` (it integrates to one over `[0, ∞)`)
/// and it is not proportional to the profile likelihood above.
pub fn abs_mean_density(psi_true: f64, sgn: i8, data: &LocationNormalData) -> Result<f64> {
    abs_mean_density_at(psi_true, sgn, data, data.xbar.abs())
}

/// Same density evaluated at an arbitrary point `t >= 0` of the `|x̄|` axis.
pub fn abs_mean_density_at(
    psi_true: f64,
    sgn: i8,
    data: &LocationNormalData,
    t: f64,
) -> Result<f64> {
    if !(psi_true >= 0.0) {
        return Err(Error::domain(format!(
            "psi_true must be nonnegative, got {psi_true}"
        )));
    }
    if sgn != 1 && sgn != -1 {
        return Err(Error::domain(format!("sgn must be +1 or -1, got {sgn}")));
    }
    if !(t >= 0.0) {
        return Err(Error::domain(format!(
            "|xbar| must be nonnegative, got {t}"
        )));
    }
    if data.n == 0 {
        return Err(Error::domain("density requires n >= 1".to_string()));
    }
    let n = data.n as f64;
    let mu = sgn as f64 * psi_true;
    let s2 = 2.0 * data.sigma0 * data.sigma0;
    let norm = n.sqrt() / ((2.0 * std::f64::consts::PI).sqrt() * data.sigma0);
    Ok(norm * ((-n * (t - mu) * (t - mu) / s2).exp() + (-n * (t + mu) * (t + mu) / s2).exp()))
}

/// Samples a curve of the given kind on `grid`.
pub fn curve(
    data: &LocationNormalData,
    grid: &[f64],
    kind: CurveKind,
    p_sign: f64,
) -> Result<LikelihoodCurve> {
    let value: Result<Vec<f64>> = grid
        .iter()
        .map(|&psi| match kind {
            CurveKind::Plain | CurveKind::Relative => Ok(relative_likelihood_location(data, psi)),
            CurveKind::Profile => profile_likelihood_abs(data, psi),
            CurveKind::Integrated => integrated_likelihood_abs(data, psi, p_sign),
        })
        .collect();
    Ok(LikelihoodCurve {
        psi: grid.to_vec(),
        value: value?,
        kind,
    })
}

// ---------------------------------------------------------------------------
// Scale normal prediction
// ---------------------------------------------------------------------------

/// Observed scale-normal data: `n` observations with `sx2 = Σ xᵢ²`, plus the
/// number `k` of future values to predict.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScaleNormalData {
    pub n: u64,
    pub sx2: f64,
    pub k: u64,
}

impl ScaleNormalData {
    pub fn new(n: u64, sx2: f64, k: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("scale-normal data needs n >= 1".to_string()));
        }
        if !(sx2 >= 0.0 && sx2.is_finite()) {
            return Err(Error::domain(format!("sx2 must be nonnegative, got {sx2}")));
        }
        Ok(ScaleNormalData { n, sx2, k })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScaleNormalMles {
    /// MLE of σ² from the observed data alone: `sx2 / n`.
    pub mle: f64,
    /// Profile MLE of σ² after profiling out the unseen future values:
    /// `sx2 / (n + k)` — not equal to `mle` whenever `k > 0`.
    pub profile_mle: f64,
    /// Profile MLE of each future value; identically zero.
    pub predictive_y: f64,
}

/// The scale-normal prediction anomaly: profiling the future observations
/// out of the joint likelihood deflates the variance estimate by `n/(n+k)`.
pub fn scale_normal_mles(data: &ScaleNormalData) -> ScaleNormalMles {
    ScaleNormalMles {
        mle: data.sx2 / data.n as f64,
        profile_mle: data.sx2 / (data.n + data.k) as f64,
        predictive_y: 0.0,
    }
}
