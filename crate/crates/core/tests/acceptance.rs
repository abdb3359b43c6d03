//! Acceptance suite: one test per numbered criterion, each printing a
//! pass/fail line (run with `--nocapture` to see them on success).

use std::time::Instant;

use evidence_core::bias::{
    bias_against_hypothesis, bias_estimation, bias_in_favor_hypothesis, lindley_sweep,
};
use evidence_core::eprocess::{product_mean_profile, simulate_sequential_type1};
use evidence_core::freq::{pvalue_location_normal, two_stage_rejection_prob, LocationNormalData};
use evidence_core::kernel::{normal_pdf, NormalParams, RngSeed};
use evidence_core::likelihood::{
    abs_mean_density, abs_mean_density_at, curve, default_psi_grid, profile_likelihood_abs,
    CurveKind,
};
use evidence_core::relbel::{
    bayes_factor, bayes_factor_limit, build_grid, evidence_report, jeffreys_label, urn_evidence,
    BayesInferenceBase, EvidenceGrid, GridTarget, JeffreysGrade, JeffreysLabel,
    DEFAULT_BF_EPSILONS,
};

const WORKERS: usize = 4;

struct Checks {
    name: &'static str,
    items: Vec<(String, bool)>,
}

impl Checks {
    fn new(name: &'static str) -> Self {
        Checks {
            name,
            items: Vec::new(),
        }
    }

    fn push(&mut self, label: impl Into<String>, ok: bool) {
        self.items.push((label.into(), ok));
    }

    fn finish(self) {
        let all = self.items.iter().all(|(_, ok)| *ok);
        let verdict = if all { "PASS" } else { "FAIL" };
        println!("{}: {verdict}", self.name);
        for (label, ok) in &self.items {
            println!("    [{}] {label}", if *ok { "ok" } else { "FAIL" });
        }
        assert!(all, "{} failed; see the itemized checks above", self.name);
    }
}

fn example6_base() -> BayesInferenceBase {
    BayesInferenceBase::new(
        LocationNormalData::new(2, 1.47, 1.0).unwrap(),
        NormalParams::new(0.0, 2.0).unwrap(),
        0.01,
    )
    .unwrap()
}

#[test]
fn criterion_01_example6_reproduction() {
    let started = Instant::now();
    let base = example6_base();
    let grid = build_grid(&base, GridTarget::AbsValue).unwrap();
    let report = evidence_report(&grid, 2.0, 0.5).unwrap();
    let elapsed = started.elapsed().as_secs_f64();
    let (pl_lo, pl_hi) = report.plausible.span().unwrap();

    let mut c = Checks::new("criterion 1 (Example 6 reproduction)");
    c.push(
        format!("estimate = {:.4} within ±0.01 of 1.47", report.estimate),
        (report.estimate - 1.47).abs() <= 0.01,
    );
    c.push(
        format!("plausible lower endpoint {pl_lo:.4} within ±0.02 of 0.65"),
        (pl_lo - 0.65).abs() <= 0.02,
    );
    c.push(
        format!("plausible upper endpoint {pl_hi:.4} within ±0.02 of 2.26"),
        (pl_hi - 2.26).abs() <= 0.02,
    );
    c.push(
        format!(
            "posterior content {:.4} within ±0.01 of 0.76",
            report.plausible_content
        ),
        (report.plausible_content - 0.76).abs() <= 0.01,
    );
    c.push(
        format!(
            "RB(2) = {:.6} within ±0.02 of 1.41",
            report.rb_at_hypothesis
        ),
        (report.rb_at_hypothesis - 1.41).abs() <= 0.02,
    );
    c.push(
        format!("strength(2) = {:.4} within ±0.02 of 0.42", report.strength),
        (report.strength - 0.42).abs() <= 0.02,
    );
    c.push(format!("runtime {elapsed:.3}s < 5s"), elapsed < 5.0);
    c.finish();
}

#[test]
fn criterion_02_example8_tail_pvalue() {
    // sqrt(n)|xbar - mu0|/sigma0 = 5
    let data = LocationNormalData::new(25, 1.0, 1.0).unwrap();
    let p = pvalue_location_normal(&data, 0.0);
    let mut c = Checks::new("criterion 2 (tail p-value to six significant digits)");
    c.push(
        format!("pvalue = {p:.7e} equals 5.733031e-7 to 6 significant digits"),
        (p / 5.733031e-7 - 1.0).abs() < 5e-7,
    );
    c.finish();
}

#[test]
fn criterion_03_urn_example() {
    let u = urn_evidence(1_000_000, 1_000).unwrap();
    let mut c = Checks::new("criterion 3 (urn evidence)");
    c.push(format!("rb = {} exactly 1000", u.rb), u.rb == 1000.0);
    c.push(
        format!("posterior = {} exactly 0.001", u.posterior),
        u.posterior == 0.001,
    );
    let label = jeffreys_label(u.rb).unwrap();
    c.push(
        format!("jeffreys label = {label}"),
        label == JeffreysLabel::InFavor(JeffreysGrade::Decisive),
    );
    c.finish();
}

#[test]
fn criterion_04_profile_integrated_concordance() {
    let data = LocationNormalData::new(2, 1.47, 1.0).unwrap();
    let grid = default_psi_grid(&data, 0.01).unwrap();
    let prof = curve(&data, &grid, CurveKind::Profile, 0.5).unwrap();
    let integ = curve(&data, &grid, CurveKind::Integrated, 0.5).unwrap();

    // Simpson quadrature of the |x̄| sampling density over [0, hi]
    let (psi, sgn) = (1.23, 1);
    let hi = psi + 12.0 * data.sigma0 / (data.n as f64).sqrt();
    let m = 20_000usize;
    let h = hi / m as f64;
    let mut s = abs_mean_density_at(psi, sgn, &data, 0.0).unwrap()
        + abs_mean_density_at(psi, sgn, &data, hi).unwrap();
    for i in 1..m {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * abs_mean_density_at(psi, sgn, &data, i as f64 * h).unwrap();
    }
    let integral = s * h / 3.0;

    let mut lo_ratio = f64::INFINITY;
    let mut hi_ratio = f64::NEG_INFINITY;
    for &p in &grid {
        let ratio =
            abs_mean_density(p, 1, &data).unwrap() / profile_likelihood_abs(&data, p).unwrap();
        lo_ratio = lo_ratio.min(ratio);
        hi_ratio = hi_ratio.max(ratio);
    }
    let variation = (hi_ratio - lo_ratio) / lo_ratio;

    let mut c = Checks::new("criterion 4 (profile/integrated concordance)");
    c.push(
        format!(
            "profile argmax {} within one grid cell of 1.47",
            prof.argmax()
        ),
        (prof.argmax() - 1.47).abs() <= 0.01 + 1e-12,
    );
    c.push(
        format!(
            "integrated argmax {} within one grid cell of 1.47",
            integ.argmax()
        ),
        (integ.argmax() - 1.47).abs() <= 0.01 + 1e-12,
    );
    c.push(
        format!("|x̄| density integrates to {integral:.9} (1 ± 1e-6)"),
        (integral - 1.0).abs() <= 1e-6,
    );
    c.push(
        format!("density/profile ratio varies {variation:.3} > 1%"),
        variation > 0.01,
    );
    c.finish();
}

#[test]
fn criterion_05_ville_bound_vs_two_stage() {
    let started = Instant::now();
    let mut c = Checks::new("criterion 5 (Ville bound vs two-stage inflation)");
    for (alpha, seed) in [(0.05, 101u64), (0.01, 102u64)] {
        let est =
            simulate_sequential_type1(alpha, 0.5, 0.0, 1.0, 1_000, 100_000, RngSeed(seed), WORKERS)
                .unwrap();
        c.push(
            format!(
                "sequential type-I at alpha={alpha}: {:.5} <= {alpha} + 3·{:.5}",
                est.estimate, est.se
            ),
            est.estimate <= alpha + 3.0 * est.se,
        );
    }
    let two = two_stage_rejection_prob(0.05, 50, 50, 1_000_000, RngSeed(103), WORKERS).unwrap();
    c.push(
        format!(
            "two-stage rate {:.5} > 0.05 by more than 5·{:.6}",
            two.estimate, two.se
        ),
        two.estimate > 0.05 + 5.0 * two.se,
    );
    let elapsed = started.elapsed().as_secs_f64();
    c.push(format!("runtime {elapsed:.1}s < 600s"), elapsed < 600.0);
    c.finish();
}

#[test]
fn criterion_06_supermartingale_means() {
    let profile = product_mean_profile(0.5, 20, 100_000, RngSeed(104), WORKERS).unwrap();
    let mut c = Checks::new("criterion 6 (super-martingale product means)");
    let mut worst = f64::NEG_INFINITY;
    let mut all_ok = true;
    for (i, st) in profile.iter().enumerate() {
        let ok = st.estimate <= 1.0 + 3.0 * st.se;
        worst = worst.max(st.estimate - 3.0 * st.se);
        if !ok {
            c.push(
                format!(
                    "step {}: mean {:.4} exceeds 1 + 3·{:.4}",
                    i + 1,
                    st.estimate,
                    st.se
                ),
                false,
            );
            all_ok = false;
        }
    }
    c.push(
        format!("every step mean <= 1 + 3·SE over 20 steps (max(mean - 3·SE) = {worst:.4})"),
        all_ok,
    );
    c.finish();
}

/// Composite-Simpson integral of `f` over `[a, b]` with `2m` panels.
fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, m: usize) -> f64 {
    let n = 2 * m;
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + i as f64 * h);
    }
    s * h / 3.0
}

/// Independent Savage–Dickey route: the prior-predictive density of the data
/// given the ψ-cell, divided by the unconditional prior predictive, both by
/// quadrature of likelihood × prior over the cell pre-image.
fn savage_dickey_by_quadrature(base: &BayesInferenceBase, grid: &EvidenceGrid) -> Vec<f64> {
    let se = base.data.sigma0 / (base.data.n as f64).sqrt();
    let lik = |mu: f64| normal_pdf((base.data.xbar - mu) / se) / se;
    let prior_pdf = |mu: f64| normal_pdf((mu - base.prior.mean) / base.prior.sd) / base.prior.sd;
    let joint = |mu: f64| lik(mu) * prior_pdf(mu);

    let numerators: Vec<f64> = grid
        .cells
        .iter()
        .map(|cell| simpson(joint, cell.lo, cell.hi, 8) + simpson(joint, -cell.hi, -cell.lo, 8))
        .collect();
    let prior_masses: Vec<f64> = grid
        .cells
        .iter()
        .map(|cell| {
            simpson(prior_pdf, cell.lo, cell.hi, 8) + simpson(prior_pdf, -cell.hi, -cell.lo, 8)
        })
        .collect();
    let mx: f64 = numerators.iter().sum();

    // sanity: m(x) has the closed form N(x̄; prior mean, τ₀² + σ₀²/n)
    let sd = (base.prior.variance() + se * se).sqrt();
    let closed = normal_pdf((base.data.xbar - base.prior.mean) / sd) / sd;
    assert!(
        (mx / closed - 1.0).abs() < 1e-9,
        "m(x) quadrature {mx} vs closed form {closed}"
    );

    numerators
        .iter()
        .zip(prior_masses.iter())
        .map(|(&num, &pm)| (num / pm) / mx)
        .collect()
}

#[test]
fn criterion_07_savage_dickey_equivalence() {
    let base = example6_base();
    let grid = build_grid(&base, GridTarget::AbsValue).unwrap();
    let oracle = savage_dickey_by_quadrature(&base, &grid);
    let mut worst = 0.0f64;
    let mut checked = 0usize;
    for (cell, sd) in grid.cells.iter().zip(oracle.iter()) {
        if !cell.valid() {
            continue;
        }
        let diff = (cell.rb - sd).abs() / cell.rb.abs().max(1.0);
        worst = worst.max(diff);
        checked += 1;
    }
    let mut c = Checks::new("criterion 7 (Savage–Dickey oracle equivalence)");
    c.push(
        format!("max |rb - m(x|ψ)/m(x)| over {checked} cells = {worst:.2e} <= 1e-6"),
        worst <= 1e-6,
    );

    // maximizing rb over cells is maximizing the cell-integrated likelihood
    let rb_argmax = grid
        .cells
        .iter()
        .enumerate()
        .filter(|(_, c)| c.valid())
        .max_by(|(_, a), (_, b)| a.rb.partial_cmp(&b.rb).unwrap())
        .map(|(i, _)| i)
        .unwrap();
    let oracle_argmax = oracle
        .iter()
        .enumerate()
        .max_by(|(_, a), (_, b)| a.partial_cmp(b).unwrap())
        .map(|(i, _)| i)
        .unwrap();
    c.push(
        format!("rb argmax cell {rb_argmax} coincides with the integrated-likelihood argmax {oracle_argmax}"),
        rb_argmax == oracle_argmax,
    );
    c.finish();
}

#[test]
fn criterion_08_bf_rb_ordering_and_limit() {
    let base = example6_base();
    let grid = build_grid(&base, GridTarget::AbsValue).unwrap();

    let mut ordering_ok = true;
    let mut strict = 0usize;
    let mut saturated = 0usize;
    for cell in grid
        .cells
        .iter()
        .filter(|c| c.valid() && c.prior_mass < 1.0)
    {
        let bf = bayes_factor(cell.prior_mass, cell.posterior_mass).unwrap();
        // in f64 the odds correction (1-prior)/(1-post) saturates to exactly 1
        // once both masses drop below machine resolution
        let resolvable = cell.prior_mass.max(cell.posterior_mass) > 1e-12;
        let ok = if cell.rb > 1.0 {
            if resolvable {
                bf > cell.rb
            } else {
                bf >= cell.rb
            }
        } else if cell.rb < 1.0 {
            if resolvable {
                bf < cell.rb
            } else {
                bf <= cell.rb
            }
        } else {
            bf == 1.0
        };
        if resolvable {
            strict += 1;
        } else {
            saturated += 1;
        }
        ordering_ok &= ok;
    }

    let rb0 = grid.cell_containing(2.0).unwrap().rb;
    let lim = bayes_factor_limit(&base, GridTarget::AbsValue, 2.0, &DEFAULT_BF_EPSILONS).unwrap();
    let diffs: Vec<f64> = lim.sequence.iter().map(|p| (p.bf - rb0).abs()).collect();
    let monotone = diffs.windows(2).all(|w| w[1] < w[0]);

    let mut c = Checks::new("criterion 8 (BF–RB ordering and neighborhood limit)");
    c.push(
        format!("ordering holds on all cells ({strict} strict, {saturated} at f64 saturation)"),
        ordering_ok,
    );
    c.push(
        format!("|BF(N_eps) - rb(2)| strictly decreasing: {diffs:?}"),
        monotone,
    );
    c.finish();
}

#[test]
fn criterion_09_jeffreys_lindley_sweep() {
    let data = LocationNormalData::new(9, 5.0 / 3.0, 1.0).unwrap();
    let taus = [1.0, 10.0, 100.0, 1000.0];
    let rows = lindley_sweep(&data, 0.0, &taus, 0.01).unwrap();

    let rb_increasing = rows.windows(2).all(|w| w[1].rb_mu0 > w[0].rb_mu0);
    let strength_converges = rows
        .windows(2)
        .all(|w| (w[1].strength_mu0 - w[1].pvalue).abs() < (w[0].strength_mu0 - w[0].pvalue).abs());

    let mut favors = Vec::new();
    for (i, &tau0) in taus.iter().enumerate() {
        let prior = NormalParams::new(0.0, tau0).unwrap();
        let base = BayesInferenceBase::new(data, prior, 0.01).unwrap();
        let f = bias_in_favor_hypothesis(
            &base,
            GridTarget::Identity,
            0.0,
            0.5,
            10_000,
            RngSeed(300 + i as u64),
            WORKERS,
        )
        .unwrap();
        favors.push(f.estimate.estimate);
    }
    let favor_increasing = favors.windows(2).all(|w| w[1] > w[0]);

    let mut c = Checks::new("criterion 9 (Jeffreys–Lindley sweep)");
    c.push(
        format!(
            "rb(mu0) strictly increasing: {:?}",
            rows.iter().map(|r| r.rb_mu0).collect::<Vec<_>>()
        ),
        rb_increasing,
    );
    c.push(
        format!(
            "|strength - pvalue| strictly decreasing: {:?}",
            rows.iter()
                .map(|r| (r.strength_mu0 - r.pvalue).abs())
                .collect::<Vec<_>>()
        ),
        strength_converges,
    );
    c.push(
        format!("bias in favor increasing: {favors:?}"),
        favor_increasing,
    );
    c.finish();
}

#[test]
fn criterion_10_bias_convergence_and_coverage() {
    let prior = NormalParams::new(0.0, 2.0).unwrap();
    let psi0 = 2.0;
    let delta_sep = 0.5;

    let mut against = Vec::new();
    let mut favor = Vec::new();
    let mut se_ok = true;
    for (i, n) in [2u64, 10, 50].into_iter().enumerate() {
        let data = LocationNormalData::new(n, 1.47, 1.0).unwrap();
        let base = BayesInferenceBase::new(data, prior, 0.01).unwrap();
        let a = bias_against_hypothesis(
            &base,
            GridTarget::AbsValue,
            psi0,
            10_000,
            RngSeed(400 + i as u64),
            WORKERS,
        )
        .unwrap();
        let f = bias_in_favor_hypothesis(
            &base,
            GridTarget::AbsValue,
            psi0,
            delta_sep,
            10_000,
            RngSeed(410 + i as u64),
            WORKERS,
        )
        .unwrap();
        se_ok &= a.se <= 0.005 && f.estimate.se <= 0.005;
        against.push(a.estimate);
        favor.push(f.estimate.estimate);
    }
    let against_falls = against.windows(2).all(|w| w[1] < w[0]);
    let favor_falls = favor.windows(2).all(|w| w[1] < w[0]);

    let data = LocationNormalData::new(5, 1.0, 1.0).unwrap();
    let base = BayesInferenceBase::new(data, prior, 0.05).unwrap();
    let est = bias_estimation(
        &base,
        GridTarget::AbsValue,
        delta_sep,
        100,
        1_000,
        RngSeed(420),
        WORKERS,
    )
    .unwrap();
    let lhs = 1.0 - est.bias_against.estimate;
    let tol = 3.0 * (est.bias_against.se + est.coverage.se);
    let coverage_ok = (lhs - est.coverage.estimate).abs() <= tol;

    let mut c = Checks::new("criterion 10 (bias convergence and coverage identity)");
    c.push(
        format!("bias against decreases over n ∈ {{2,10,50}}: {against:?}"),
        against_falls,
    );
    c.push(
        format!("bias in favor decreases over n ∈ {{2,10,50}}: {favor:?}"),
        favor_falls,
    );
    c.push("every estimate has SE <= 0.005".to_string(), se_ok);
    c.push(
        format!(
            "1 - bias_against_E = {lhs:.4} matches coverage {:.4} within 3·SE",
            est.coverage.estimate
        ),
        coverage_ok,
    );
    c.finish();
}
