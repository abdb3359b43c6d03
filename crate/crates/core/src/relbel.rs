//! The principle-of-evidence core: δ-discretized prior and posterior for the
//! parameter of interest, relative belief ratios per cell, the estimate,
//! plausible and credible regions, strength, Bayes factors and the Jeffreys
//! scale, the urn counterexample, and the Pereira–Stern tail measure.
//!
//! Observing the data is evidence in favor of a cell exactly when its
//! posterior mass exceeds its prior mass (rb > 1), evidence against when
//! rb < 1, and neutral when rb = 1. Cells are the half-open intervals
//! `[kδ, (k+1)δ)`; a ψ value sitting exactly on a boundary belongs to the
//! cell on its right.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::freq::LocationNormalData;
use crate::interval::IntervalSet;
use crate::kernel::{normal_pdf, phi_diff, phi_sf, NormalParams};
use crate::mc::KahanSum;

/// Prior mass below which a cell is excluded from rb computation and from
/// all regions (guards 0/0 at extreme tails).
pub const MIN_PRIOR_MASS: f64 = 1e-300;

/// Grid coverage target; grids extend to ±8.5 sd of both prior and
/// posterior, comfortably past the 1 - 1e-6 requirement.
const SPAN_SDS: f64 = 8.5;

/// Default shrinking neighborhoods for the Bayes-factor limit.
pub const DEFAULT_BF_EPSILONS: [f64; 5] = [0.4, 0.2, 0.1, 0.05, 0.01];

// ---------------------------------------------------------------------------
// Inference base and grid
// ---------------------------------------------------------------------------

/// Sampling model + observed data + prior + the difference δ that matters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BayesInferenceBase {
    pub data: LocationNormalData,
    /// Prior on μ.
    pub prior: NormalParams,
    /// Cell width of the ψ discretization, in data units.
    pub delta: f64,
}

impl BayesInferenceBase {
    pub fn new(data: LocationNormalData, prior: NormalParams, delta: f64) -> Result<Self> {
        if !(delta > 0.0 && delta.is_finite()) {
            return Err(Error::domain(format!(
                "delta must be positive, got {delta}"
            )));
        }
        if delta >= prior.sd {
            return Err(Error::domain(format!(
                "delta ({delta}) must be smaller than the prior sd ({})",
                prior.sd
            )));
        }
        Ok(BayesInferenceBase { data, prior, delta })
    }
}

/// Which function of μ the grid discretizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GridTarget {
    /// ψ = |μ| on `[0, ∞)` (folded prior and posterior).
    AbsValue,
    /// ψ = μ on the whole line.
    Identity,
}

/// One δ-cell `[lo, hi)` with its prior mass, posterior mass and
/// relative belief ratio (NaN when the prior mass is below the guard).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridCell {
    pub lo: f64,
    pub hi: f64,
    pub prior_mass: f64,
    pub posterior_mass: f64,
    pub rb: f64,
}

impl GridCell {
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn valid(&self) -> bool {
        self.prior_mass >= MIN_PRIOR_MASS
    }
}

/// The δ-discretized prior/posterior over ψ.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvidenceGrid {
    pub target: GridTarget,
    pub delta: f64,
    /// Index of the first cell: cell `i` spans `[(k_lo+i)δ, (k_lo+i+1)δ)`.
    pub k_lo: i64,
    pub cells: Vec<GridCell>,
    pub prior_psi: NormalParams,
    pub posterior_psi: NormalParams,
}

/// Conjugate update for the location-normal model. With `n = 0` the prior is
/// returned unchanged; as `τ₀ → ∞` the posterior tends to `N(x̄, σ₀²/n)`.
pub fn posterior_params(base: &BayesInferenceBase) -> NormalParams {
    posterior_params_for_xbar(base, base.data.xbar)
}

pub(crate) fn posterior_params_for_xbar(base: &BayesInferenceBase, xbar: f64) -> NormalParams {
    let n = base.data.n as f64;
    let s2 = base.data.sigma0 * base.data.sigma0;
    let t2 = base.prior.variance();
    let precision = n / s2 + 1.0 / t2;
    let mean = (n * xbar / s2 + base.prior.mean / t2) / precision;
    NormalParams {
        mean,
        sd: (1.0 / precision).sqrt(),
    }
}

/// Mass of `[a, b)` under the target-transformed law of `params`.
pub(crate) fn target_mass(target: GridTarget, a: f64, b: f64, params: &NormalParams) -> f64 {
    let z = |t: f64| (t - params.mean) / params.sd;
    match target {
        GridTarget::Identity => phi_diff(z(a), z(b)),
        GridTarget::AbsValue => phi_diff(z(a), z(b)) + phi_diff(z(-b), z(-a)),
    }
}

/// Density of the target-transformed law at `t`.
fn target_pdf(target: GridTarget, t: f64, params: &NormalParams) -> f64 {
    let d = |x: f64| normal_pdf((x - params.mean) / params.sd) / params.sd;
    match target {
        GridTarget::Identity => d(t),
        GridTarget::AbsValue => d(t) + d(-t),
    }
}

fn edge(k: i64, delta: f64) -> f64 {
    k as f64 * delta
}

/// Index `k` of the cell `[kδ, (k+1)δ)` containing ψ; boundary values go to
/// the right cell. Consistent with the floating-point edge values.
pub(crate) fn cell_k(psi: f64, delta: f64) -> i64 {
    let mut k = (psi / delta).floor() as i64;
    while psi < edge(k, delta) {
        k -= 1;
    }
    while psi >= edge(k + 1, delta) {
        k += 1;
    }
    k
}

/// Builds the δ-grid for the chosen target. Cell masses are CDF differences
/// of the (folded, for `AbsValue`) prior and posterior; the grid extends until
/// the cumulative covered mass of both exceeds `1 - 1e-6`.
pub fn build_grid(base: &BayesInferenceBase, target: GridTarget) -> Result<EvidenceGrid> {
    let prior = base.prior;
    let post = posterior_params(base);
    let delta = base.delta;

    let (k_lo, k_hi) = match target {
        GridTarget::AbsValue => {
            let hi =
                (prior.mean.abs() + SPAN_SDS * prior.sd).max(post.mean.abs() + SPAN_SDS * post.sd);
            (0i64, (hi / delta).ceil() as i64)
        }
        GridTarget::Identity => {
            let lo = (prior.mean - SPAN_SDS * prior.sd).min(post.mean - SPAN_SDS * post.sd);
            let hi = (prior.mean + SPAN_SDS * prior.sd).max(post.mean + SPAN_SDS * post.sd);
            ((lo / delta).floor() as i64, (hi / delta).ceil() as i64)
        }
    };

    let mut cells = Vec::with_capacity((k_hi - k_lo) as usize);
    let mut prior_total = KahanSum::default();
    let mut post_total = KahanSum::default();
    for k in k_lo..k_hi {
        let lo = edge(k, delta);
        let hi = edge(k + 1, delta);
        let pm = target_mass(target, lo, hi, &prior);
        let qm = target_mass(target, lo, hi, &post);
        prior_total.add(pm);
        post_total.add(qm);
        let rb = if pm >= MIN_PRIOR_MASS {
            qm / pm
        } else {
            f64::NAN
        };
        cells.push(GridCell {
            lo,
            hi,
            prior_mass: pm,
            posterior_mass: qm,
            rb,
        });
    }

    for (name, total) in [
        ("prior", prior_total.value()),
        ("posterior", post_total.value()),
    ] {
        if (total - 1.0).abs() > 1e-6 {
            return Err(Error::domain(format!(
                "grid covers only {total} of the {name} mass"
            )));
        }
    }

    Ok(EvidenceGrid {
        target,
        delta,
        k_lo,
        cells,
        prior_psi: prior,
        posterior_psi: post,
    })
}

impl EvidenceGrid {
    /// Index into `cells` of the cell containing ψ.
    pub fn cell_index(&self, psi: f64) -> Result<usize> {
        let k = cell_k(psi, self.delta);
        let idx = k - self.k_lo;
        if idx < 0 || idx as usize >= self.cells.len() {
            return Err(Error::domain(format!(
                "psi = {psi} lies outside the grid span"
            )));
        }
        Ok(idx as usize)
    }

    pub fn cell_containing(&self, psi: f64) -> Result<&GridCell> {
        Ok(&self.cells[self.cell_index(psi)?])
    }
}

// ---------------------------------------------------------------------------
// Report
// ---------------------------------------------------------------------------

/// Relative-belief inference summary for one hypothesis value ψ₀.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvidenceReport {
    /// Midpoint of the cell with maximum evidence (ties go to the smallest ψ).
    pub estimate: f64,
    /// Cells with evidence in their favor (rb > 1).
    pub plausible: IntervalSet,
    /// Posterior probability of the plausible region.
    pub plausible_content: f64,
    /// rb of the cell containing ψ₀.
    pub rb_at_hypothesis: f64,
    /// Posterior probability of `{rb(ψ) <= rb(ψ₀)}` — the strength of the
    /// evidence concerning ψ₀.
    pub strength: f64,
    /// Highest-rb cells accumulating at least `gamma` posterior mass.
    pub credible: IntervalSet,
    pub gamma: f64,
    /// Whether the credible region stayed inside the plausible region; it is
    /// reported either way, flagged rather than truncated.
    pub credible_contained: bool,
    /// Bayes factor of the ψ₀ cell.
    pub bf_at_hypothesis: f64,
    pub jeffreys_label: JeffreysLabel,
}

/// Builds the full report from a grid.
pub fn evidence_report(grid: &EvidenceGrid, psi0: f64, gamma: f64) -> Result<EvidenceReport> {
    if !(gamma > 0.0 && gamma < 1.0) {
        return Err(Error::domain(format!(
            "gamma must lie in (0,1), got {gamma}"
        )));
    }
    let i0 = grid.cell_index(psi0)?;
    let hypothesis = &grid.cells[i0];
    if !hypothesis.valid() {
        return Err(Error::domain(format!(
            "hypothesis cell at psi0 = {psi0} has no prior mass"
        )));
    }
    let rb0 = hypothesis.rb;

    let mut best: Option<usize> = None;
    for (i, c) in grid.cells.iter().enumerate() {
        if !c.valid() {
            continue;
        }
        if best.is_none_or(|b| c.rb > grid.cells[b].rb) {
            best = Some(i);
        }
    }
    let best = best.ok_or_else(|| Error::domain("grid has no cell with prior mass".to_string()))?;
    let estimate = grid.cells[best].midpoint();

    let mut content = KahanSum::default();
    let plausible =
        IntervalSet::from_sorted_cells(grid.cells.iter().filter(|c| c.valid() && c.rb > 1.0).map(
            |c| {
                content.add(c.posterior_mass);
                (c.lo, c.hi)
            },
        ));

    let mut strength = KahanSum::default();
    for c in grid.cells.iter().filter(|c| c.valid()) {
        if c.rb <= rb0 {
            strength.add(c.posterior_mass);
        }
    }

    // credible region: cells ranked by rb (descending, ties to smaller ψ)
    // until the posterior mass reaches gamma
    let mut order: Vec<usize> = (0..grid.cells.len())
        .filter(|&i| grid.cells[i].valid())
        .collect();
    order.sort_by(|&a, &b| {
        grid.cells[b]
            .rb
            .partial_cmp(&grid.cells[a].rb)
            .unwrap()
            .then(grid.cells[a].lo.partial_cmp(&grid.cells[b].lo).unwrap())
    });
    let mut acc = 0.0;
    let mut chosen: Vec<usize> = Vec::new();
    for i in order {
        chosen.push(i);
        acc += grid.cells[i].posterior_mass;
        if acc >= gamma {
            break;
        }
    }
    let credible_contained = chosen.iter().all(|&i| grid.cells[i].rb > 1.0);
    chosen.sort_unstable();
    let credible = IntervalSet::from_sorted_cells(
        chosen.iter().map(|&i| (grid.cells[i].lo, grid.cells[i].hi)),
    );

    let bf = bayes_factor(hypothesis.prior_mass, hypothesis.posterior_mass)?;
    Ok(EvidenceReport {
        estimate,
        plausible,
        plausible_content: content.value(),
        rb_at_hypothesis: rb0,
        strength: strength.value(),
        credible,
        gamma,
        credible_contained,
        bf_at_hypothesis: bf,
        jeffreys_label: jeffreys_label(bf)?,
    })
}

// ---------------------------------------------------------------------------
// Bayes factors
// ---------------------------------------------------------------------------

/// Posterior-to-prior odds ratio of an event:
/// `[post/(1-post)] / [prior/(1-prior)]`. `posterior_mass = 1` maps to the
/// +infinity sentinel. Exceeds the rb of the event exactly when rb > 1.
pub fn bayes_factor(prior_mass: f64, posterior_mass: f64) -> Result<f64> {
    if !(prior_mass > 0.0 && prior_mass < 1.0) {
        return Err(Error::domain(format!(
            "prior mass must lie in (0,1), got {prior_mass}"
        )));
    }
    if !(0.0..=1.0).contains(&posterior_mass) {
        return Err(Error::domain(format!(
            "posterior mass must lie in [0,1], got {posterior_mass}"
        )));
    }
    if posterior_mass == 1.0 {
        return Ok(f64::INFINITY);
    }
    Ok((posterior_mass / (1.0 - posterior_mass)) / (prior_mass / (1.0 - prior_mass)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BfPoint {
    pub epsilon: f64,
    pub bf: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BfLimit {
    /// `BF(N_ε(ψ₀))` for each ε, largest first.
    pub sequence: Vec<BfPoint>,
    /// Value at the smallest ε.
    pub limit: f64,
}

/// Bayes factors of shrinking neighborhoods `N_ε(ψ₀) = (ψ₀-ε, ψ₀+ε)`;
/// as ε ↓ 0 these converge to the relative belief ratio at ψ₀, so no
/// point-mass mixture prior is ever needed.
pub fn bayes_factor_limit(
    base: &BayesInferenceBase,
    target: GridTarget,
    psi0: f64,
    epsilons: &[f64],
) -> Result<BfLimit> {
    if epsilons.is_empty() {
        return Err(Error::domain("need at least one epsilon".to_string()));
    }
    if epsilons.iter().any(|&e| !(e > 0.0)) {
        return Err(Error::domain("epsilons must be positive".to_string()));
    }
    if matches!(target, GridTarget::AbsValue) && psi0 < 0.0 {
        return Err(Error::domain(format!(
            "psi0 must be nonnegative for |μ|, got {psi0}"
        )));
    }
    let prior = base.prior;
    if target_pdf(target, psi0, &prior) <= 0.0 {
        return Err(Error::domain(format!(
            "prior density vanishes at psi0 = {psi0}"
        )));
    }
    let post = posterior_params(base);

    let mut eps = epsilons.to_vec();
    eps.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut sequence = Vec::with_capacity(eps.len());
    for &e in &eps {
        let lo = match target {
            GridTarget::AbsValue => (psi0 - e).max(0.0),
            GridTarget::Identity => psi0 - e,
        };
        let hi = psi0 + e;
        let pm = target_mass(target, lo, hi, &prior);
        let qm = target_mass(target, lo, hi, &post);
        sequence.push(BfPoint {
            epsilon: e,
            bf: bayes_factor(pm, qm)?,
        });
    }
    let limit = sequence.last().unwrap().bf;
    Ok(BfLimit { sequence, limit })
}

// ---------------------------------------------------------------------------
// Jeffreys scale
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum JeffreysGrade {
    /// BF in (1, 10^(1/2)]: barely worth mentioning.
    Barely,
    /// BF in (10^(1/2), 10].
    Substantial,
    /// BF in (10, 10^(3/2)].
    Strong,
    /// BF in (10^(3/2), 10^2].
    VeryStrong,
    /// BF above 10^2.
    Decisive,
}

impl JeffreysGrade {
    fn from_ratio(bf: f64) -> JeffreysGrade {
        debug_assert!(bf > 1.0 || bf.is_infinite());
        if bf <= 10f64.sqrt() {
            JeffreysGrade::Barely
        } else if bf <= 10.0 {
            JeffreysGrade::Substantial
        } else if bf <= 10f64.powf(1.5) {
            JeffreysGrade::Strong
        } else if bf <= 100.0 {
            JeffreysGrade::VeryStrong
        } else {
            JeffreysGrade::Decisive
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            JeffreysGrade::Barely => "barely",
            JeffreysGrade::Substantial => "substantial",
            JeffreysGrade::Strong => "strong",
            JeffreysGrade::VeryStrong => "very_strong",
            JeffreysGrade::Decisive => "decisive",
        }
    }
}

/// Jeffreys' verbal scale for a Bayes factor; BF < 1 is graded by the
/// reciprocal with direction "against".
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JeffreysLabel {
    Neutral,
    InFavor(JeffreysGrade),
    Against(JeffreysGrade),
}

pub fn jeffreys_label(bf: f64) -> Result<JeffreysLabel> {
    if !(bf > 0.0) {
        return Err(Error::domain(format!(
            "Bayes factor must be positive, got {bf}"
        )));
    }
    Ok(if bf == 1.0 {
        JeffreysLabel::Neutral
    } else if bf > 1.0 {
        JeffreysLabel::InFavor(JeffreysGrade::from_ratio(bf))
    } else {
        JeffreysLabel::Against(JeffreysGrade::from_ratio(1.0 / bf))
    })
}

impl std::fmt::Display for JeffreysLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            JeffreysLabel::Neutral => write!(f, "neutral"),
            JeffreysLabel::InFavor(g) => write!(f, "{}", g.label()),
            JeffreysLabel::Against(g) => write!(f, "{}_against", g.label()),
        }
    }
}

impl Serialize for JeffreysLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

// ---------------------------------------------------------------------------
// Urn counterexample and Pereira–Stern
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UrnEvidence {
    pub rb: f64,
    pub posterior: f64,
}

/// A uniformly drawn element of a set of size `n_total` is revealed to lie
/// in a subset of size `n_seen`; for a singleton `A` inside that subset,
/// `rb = n_total/n_seen` however small the posterior belief `1/n_seen` is —
/// a decisive-looking Bayes factor can carry almost no posterior conviction.
pub fn urn_evidence(n_total: u64, n_seen: u64) -> Result<UrnEvidence> {
    if n_seen == 0 || n_seen >= n_total {
        return Err(Error::domain(format!(
            "need 1 <= n_seen < n_total, got n_seen = {n_seen}, n_total = {n_total}"
        )));
    }
    Ok(UrnEvidence {
        rb: n_total as f64 / n_seen as f64,
        posterior: 1.0 / n_seen as f64,
    })
}

/// Pereira–Stern evidence for `H0: μ = μ₀`: the posterior mass where the
/// posterior density does not exceed the density at μ₀. For a normal
/// posterior `N(m, v)` this is `2(1 - Φ(|μ₀ - m|/√v))`; large values support
/// `H0`, small values count against it.
pub fn pereira_stern_ev(base: &BayesInferenceBase, mu0: f64) -> Result<f64> {
    if !mu0.is_finite() {
        return Err(Error::domain(format!("mu0 must be finite, got {mu0}")));
    }
    let post = posterior_params(base);
    Ok(2.0 * phi_sf((mu0 - post.mean).abs() / post.sd))
}
