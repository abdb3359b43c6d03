//! `evid` — command-line front end for the evidence toolkit.
//!
//! Every subcommand writes `<subcommand>.csv` and `<subcommand>.json` into
//! the output directory (flag `--out-dir`, env `EVIDENCE_OUT_DIR`, default
//! `.`) and prints a one-line summary. `reproduce exampleK` reruns a worked
//! example end to end and writes `exampleK.csv` / `exampleK.json`. Outputs
//! are byte-identical across runs with the same configuration and seed.
//!
//! Exit codes: 0 on success, 2 on configuration errors, 1 on numeric
//! failures.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use evidence_core::bias::{bias_estimation, bias_report, lindley_sweep};
use evidence_core::eprocess::{e_value_power, product_mean_profile, simulate_sequential_type1};
use evidence_core::freq::{
    confidence_interval, pvalue_location_normal, two_stage_rejection_prob, LocationNormalData,
};
use evidence_core::kernel::{NormalParams, RngSeed};
use evidence_core::likelihood::{
    curve, default_psi_grid, scale_normal_mles, CurveKind, ScaleNormalData,
};
use evidence_core::relbel::{
    build_grid, evidence_report, jeffreys_label, urn_evidence, BayesInferenceBase, GridTarget,
};

#[derive(Parser)]
#[command(
    name = "evid",
    version,
    about = "Measures of statistical evidence for the location-normal family"
)]
struct Cli {
    /// Directory for the CSV/JSON outputs.
    #[arg(long, global = true, env = "EVIDENCE_OUT_DIR", default_value = ".")]
    out_dir: PathBuf,

    /// Worker threads for Monte Carlo loops (never changes the numbers).
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    /// ψ = |μ|
    Abs,
    /// ψ = μ
    Identity,
}

impl From<TargetArg> for GridTarget {
    fn from(t: TargetArg) -> GridTarget {
        match t {
            TargetArg::Abs => GridTarget::AbsValue,
            TargetArg::Identity => GridTarget::Identity,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Two-sided p-value for H0: μ = μ0.
    Pvalue {
        #[arg(long, default_value_t = 2)]
        n: u64,
        #[arg(long, default_value_t = 1.47)]
        xbar: f64,
        #[arg(long, default_value_t = 1.0)]
        sigma0: f64,
        #[arg(long, default_value_t = 2.0)]
        mu0: f64,
    },
    /// (1-α) confidence interval for μ.
    Confint {
        #[arg(long, default_value_t = 4)]
        n: u64,
        #[arg(long, default_value_t = 0.0)]
        xbar: f64,
        #[arg(long, default_value_t = 1.0)]
        sigma0: f64,
        #[arg(long, default_value_t = 0.05)]
        alpha: f64,
    },
    /// Rejection probability of the two-stage continue-on-near-miss procedure under H0.
    TwoStage {
        #[arg(long, default_value_t = 0.05)]
        alpha: f64,
        #[arg(long, default_value_t = 50)]
        n1: u64,
        #[arg(long, default_value_t = 50)]
        n2: u64,
        #[arg(long, default_value_t = 1_000_000)]
        reps: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Sequential e-process type-I rate and super-martingale profile.
    Eprocess {
        #[arg(long, default_value_t = 0.05)]
        alpha: f64,
        #[arg(long, default_value_t = 0.5)]
        a: f64,
        #[arg(long, default_value_t = 0.0)]
        mu0: f64,
        #[arg(long, default_value_t = 1.0)]
        sigma0: f64,
        #[arg(long, default_value_t = 1000)]
        max_steps: usize,
        #[arg(long, default_value_t = 100_000)]
        reps: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Profile and integrated likelihood curves for ψ = |μ|.
    Likelihood {
        #[arg(long, default_value_t = 2)]
        n: u64,
        #[arg(long, default_value_t = 1.47)]
        xbar: f64,
        #[arg(long, default_value_t = 1.0)]
        sigma0: f64,
        #[arg(long, default_value_t = 0.5)]
        p_sign: f64,
        #[arg(long, default_value_t = 0.01)]
        delta: f64,
    },
    /// Relative-belief grid and evidence report.
    Rb {
        #[arg(long, default_value_t = 2)]
        n: u64,
        #[arg(long, default_value_t = 1.47)]
        xbar: f64,
        #[arg(long, default_value_t = 1.0)]
        sigma0: f64,
        #[arg(long, default_value_t = 0.0)]
        mu0_prior: f64,
        #[arg(long, default_value_t = 2.0)]
        tau0: f64,
        #[arg(long, default_value_t = 0.01)]
        delta: f64,
        #[arg(long, default_value_t = 2.0)]
        psi0: f64,
        #[arg(long, default_value_t = 0.5)]
        gamma: f64,
        #[arg(long, value_enum, default_value_t = TargetArg::Abs)]
        target: TargetArg,
    },
    /// Prior-predictive bias diagnostics for a hypothesis cell.
    Bias {
        #[arg(long, default_value_t = 5)]
        n: u64,
        /// Unused by the prior-predictive biases; kept for a complete base.
        #[arg(long, default_value_t = 0.0)]
        xbar: f64,
        #[arg(long, default_value_t = 1.0)]
        sigma0: f64,
        #[arg(long, default_value_t = 0.0)]
        mu0_prior: f64,
        #[arg(long, default_value_t = 2.0)]
        tau0: f64,
        #[arg(long, default_value_t = 0.01)]
        delta: f64,
        #[arg(long, default_value_t = 2.0)]
        psi0: f64,
        #[arg(long, default_value_t = 0.5)]
        delta_sep: f64,
        #[arg(long, default_value_t = 10_000)]
        reps: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = TargetArg::Abs)]
        target: TargetArg,
        /// Also average the biases over the prior (estimation biases).
        #[arg(long, default_value_t = false)]
        estimation: bool,
        #[arg(long, default_value_t = 100)]
        outer: u64,
        #[arg(long, default_value_t = 1000)]
        inner: u64,
    },
    /// Diffuse-prior sweep: rb at the null, strength and the fixed p-value.
    Lindley {
        #[arg(long, default_value_t = 9)]
        n: u64,
        #[arg(long, default_value_t = 5.0 / 3.0)]
        xbar: f64,
        #[arg(long, default_value_t = 1.0)]
        sigma0: f64,
        #[arg(long, default_value_t = 0.0)]
        mu0: f64,
        #[arg(long, value_delimiter = ',', default_value = "1,10,100,1000")]
        tau0_list: Vec<f64>,
        #[arg(long, default_value_t = 0.01)]
        delta: f64,
    },
    /// Re-run a worked example end to end.
    Reproduce {
        #[arg(value_enum)]
        example: Example,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Example {
    Example2,
    Example3,
    Example4,
    Example5,
    Example6,
    Example7,
    Example8,
    Example9,
}

impl Example {
    fn name(self) -> &'static str {
        match self {
            Example::Example2 => "example2",
            Example::Example3 => "example3",
            Example::Example4 => "example4",
            Example::Example5 => "example5",
            Example::Example6 => "example6",
            Example::Example7 => "example7",
            Example::Example8 => "example8",
            Example::Example9 => "example9",
        }
    }
}

// ---------------------------------------------------------------------------
// Error / exit mapping
// ---------------------------------------------------------------------------

enum AppError {
    Config(String),
    Numeric(String),
}

impl AppError {
    fn code(&self) -> u8 {
        match self {
            AppError::Config(_) => 2,
            AppError::Numeric(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            AppError::Config(m) | AppError::Numeric(m) => m,
        }
    }
}

trait NumericExt<T> {
    fn numeric(self) -> Result<T, AppError>;
    fn config(self) -> Result<T, AppError>;
}

impl<T> NumericExt<T> for evidence_core::Result<T> {
    fn numeric(self) -> Result<T, AppError> {
        self.map_err(|e| AppError::Numeric(e.to_string()))
    }

    fn config(self) -> Result<T, AppError> {
        self.map_err(|e| AppError::Config(e.to_string()))
    }
}

// ---------------------------------------------------------------------------
// Output files
// ---------------------------------------------------------------------------

/// Ten significant digits, period decimal separator.
fn g10(x: f64) -> String {
    format!("{x:.9e}")
}

fn write_csv(
    dir: &Path,
    name: &str,
    header: &str,
    rows: &[Vec<String>],
) -> Result<PathBuf, AppError> {
    let mut body = String::new();
    body.push_str(header);
    body.push('\n');
    for row in rows {
        let _ = writeln!(body, "{}", row.join(","));
    }
    let path = dir.join(format!("{name}.csv"));
    std::fs::write(&path, body)
        .map_err(|e| AppError::Numeric(format!("cannot write {}: {e}", path.display())))?;
    Ok(path)
}

fn write_json<T: Serialize>(dir: &Path, name: &str, value: &T) -> Result<PathBuf, AppError> {
    let path = dir.join(format!("{name}.json"));
    let mut body =
        serde_json::to_string_pretty(value).map_err(|e| AppError::Numeric(e.to_string()))?;
    body.push('\n');
    std::fs::write(&path, body)
        .map_err(|e| AppError::Numeric(format!("cannot write {}: {e}", path.display())))?;
    Ok(path)
}

fn finite(x: f64, what: &str) -> Result<f64, AppError> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(AppError::Numeric(format!("{what} is not finite ({x})")))
    }
}

// ---------------------------------------------------------------------------
// Main
// ---------------------------------------------------------------------------

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = std::fs::create_dir_all(&cli.out_dir) {
        eprintln!(
            "error: cannot create output directory {}: {e}",
            cli.out_dir.display()
        );
        return ExitCode::from(2);
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.code())
        }
    }
}

fn run(cli: &Cli) -> Result<(), AppError> {
    let dir = cli.out_dir.as_path();
    let workers = cli.workers.max(1);
    match &cli.cmd {
        Cmd::Pvalue {
            n,
            xbar,
            sigma0,
            mu0,
        } => {
            let data = LocationNormalData::new(*n, *xbar, *sigma0).config()?;
            let p = finite(pvalue_location_normal(&data, *mu0), "pvalue")?;
            let csv = write_csv(
                dir,
                "pvalue",
                "n,xbar,sigma0,mu0,pvalue",
                &[vec![
                    n.to_string(),
                    g10(*xbar),
                    g10(*sigma0),
                    g10(*mu0),
                    g10(p),
                ]],
            )?;
            let jsn = write_json(
                dir,
                "pvalue",
                &json!({"n": n, "xbar": xbar, "sigma0": sigma0, "mu0": mu0, "pvalue": p}),
            )?;
            println!("pvalue = {p:.10}");
            println!("wrote {} and {}", csv.display(), jsn.display());
        }
        Cmd::Confint {
            n,
            xbar,
            sigma0,
            alpha,
        } => {
            let data = LocationNormalData::new(*n, *xbar, *sigma0).config()?;
            let ci = confidence_interval(&data, *alpha).config()?;
            let iv = ci.parts()[0];
            let csv = write_csv(
                dir,
                "confint",
                "n,xbar,sigma0,alpha,lo,hi",
                &[vec![
                    n.to_string(),
                    g10(*xbar),
                    g10(*sigma0),
                    g10(*alpha),
                    g10(iv.lo),
                    g10(iv.hi),
                ]],
            )?;
            let jsn = write_json(
                dir,
                "confint",
                &json!({"n": n, "xbar": xbar, "sigma0": sigma0, "alpha": alpha, "lo": iv.lo, "hi": iv.hi}),
            )?;
            println!("confidence interval = [{:.10}, {:.10})", iv.lo, iv.hi);
            println!("wrote {} and {}", csv.display(), jsn.display());
        }
        Cmd::TwoStage {
            alpha,
            n1,
            n2,
            reps,
            seed,
        } => {
            let est = two_stage_rejection_prob(*alpha, *n1, *n2, *reps, RngSeed(*seed), workers)
                .config()?;
            let csv = write_csv(
                dir,
                "two-stage",
                "alpha,n1,n2,reps,seed,estimate,se",
                &[vec![
                    g10(*alpha),
                    n1.to_string(),
                    n2.to_string(),
                    reps.to_string(),
                    seed.to_string(),
                    g10(est.estimate),
                    g10(est.se),
                ]],
            )?;
            let jsn = write_json(
                dir,
                "two-stage",
                &json!({"alpha": alpha, "n1": n1, "n2": n2, "reps": reps, "seed": seed, "estimate": est.estimate, "se": est.se}),
            )?;
            println!(
                "two-stage rejection probability = {:.5} (se {:.5})",
                est.estimate, est.se
            );
            println!("wrote {} and {}", csv.display(), jsn.display());
        }
        Cmd::Eprocess {
            alpha,
            a,
            mu0,
            sigma0,
            max_steps,
            reps,
            seed,
        } => {
            let rate = simulate_sequential_type1(
                *alpha,
                *a,
                *mu0,
                *sigma0,
                *max_steps,
                *reps,
                RngSeed(*seed),
                workers,
            )
            .config()?;
            let profile = product_mean_profile(
                *a,
                20,
                (*reps).min(100_000),
                RngSeed(seed.wrapping_add(1)),
                workers,
            )
            .config()?;
            let rows: Vec<Vec<String>> = profile
                .iter()
                .enumerate()
                .map(|(i, st)| vec![(i + 1).to_string(), g10(st.estimate), g10(st.se)])
                .collect();
            let csv = write_csv(dir, "eprocess", "step,product_mean,se", &rows)?;
            let jsn = write_json(
                dir,
                "eprocess",
                &json!({
                    "alpha": alpha, "a": a, "mu0": mu0, "sigma0": sigma0,
                    "max_steps": max_steps, "reps": reps, "seed": seed,
                    "type1_rate": rate.estimate, "type1_se": rate.se
                }),
            )?;
            println!(
                "sequential type-I rate = {:.5} (se {:.5}, bound {alpha})",
                rate.estimate, rate.se
            );
            println!("wrote {} and {}", csv.display(), jsn.display());
        }
        Cmd::Likelihood {
            n,
            xbar,
            sigma0,
            p_sign,
            delta,
        } => {
            let data = LocationNormalData::new(*n, *xbar, *sigma0).config()?;
            let grid = default_psi_grid(&data, *delta).config()?;
            let prof = curve(&data, &grid, CurveKind::Profile, *p_sign).numeric()?;
            let integ = curve(&data, &grid, CurveKind::Integrated, *p_sign).numeric()?;
            let mut rows = Vec::with_capacity(2 * grid.len());
            for (psi, v) in prof.psi.iter().zip(prof.value.iter()) {
                rows.push(vec![g10(*psi), g10(*v), "profile".to_string()]);
            }
            for (psi, v) in integ.psi.iter().zip(integ.value.iter()) {
                rows.push(vec![g10(*psi), g10(*v), "integrated".to_string()]);
            }
            let csv = write_csv(dir, "likelihood", "psi,value,kind", &rows)?;
            let jsn = write_json(
                dir,
                "likelihood",
                &json!({
                    "n": n, "xbar": xbar, "sigma0": sigma0, "p_sign": p_sign, "delta": delta,
                    "profile_argmax": prof.argmax(), "integrated_argmax": integ.argmax()
                }),
            )?;
            println!(
                "profile argmax = {}, integrated argmax = {}",
                prof.argmax(),
                integ.argmax()
            );
            println!("wrote {} and {}", csv.display(), jsn.display());
        }
        Cmd::Rb {
            n,
            xbar,
            sigma0,
            mu0_prior,
            tau0,
            delta,
            psi0,
            gamma,
            target,
        } => {
            let data = LocationNormalData::new(*n, *xbar, *sigma0).config()?;
            let prior = NormalParams::new(*mu0_prior, *tau0).config()?;
            let base = BayesInferenceBase::new(data, prior, *delta).config()?;
            let grid = build_grid(&base, (*target).into()).numeric()?;
            let report = evidence_report(&grid, *psi0, *gamma).config()?;
            let rows: Vec<Vec<String>> = grid
                .cells
                .iter()
                .map(|c| {
                    vec![
                        g10(c.midpoint()),
                        g10(c.prior_mass),
                        g10(c.posterior_mass),
                        g10(c.rb),
                    ]
                })
                .collect();
            let csv = write_csv(dir, "rb", "psi_mid,prior_mass,posterior_mass,rb", &rows)?;
            let jsn = write_json(dir, "rb", &report)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&report)
                    .map_err(|e| AppError::Numeric(e.to_string()))?
            );
            println!("wrote {} and {}", csv.display(), jsn.display());
        }
        Cmd::Bias {
            n,
            xbar,
            sigma0,
            mu0_prior,
            tau0,
            delta,
            psi0,
            delta_sep,
            reps,
            seed,
            target,
            estimation,
            outer,
            inner,
        } => {
            let data = LocationNormalData::new(*n, *xbar, *sigma0).config()?;
            let prior = NormalParams::new(*mu0_prior, *tau0).config()?;
            let base = BayesInferenceBase::new(data, prior, *delta).config()?;
            let report = bias_report(
                &base,
                (*target).into(),
                *psi0,
                *delta_sep,
                *reps,
                RngSeed(*seed),
                workers,
            )
            .config()?;
            let rows = vec![vec![
                g10(*psi0),
                g10(report.bias_against.estimate),
                g10(report.bias_against.se),
                g10(report.bias_in_favor.estimate),
                g10(report.bias_in_favor.se),
                g10(report.sup_attained_at),
            ]];
            let csv = write_csv(
                dir,
                "bias",
                "psi0,bias_against,bias_against_se,bias_in_favor,bias_in_favor_se,sup_attained_at",
                &rows,
            )?;
            let jsn = if *estimation {
                let est = bias_estimation(
                    &base,
                    (*target).into(),
                    *delta_sep,
                    *outer,
                    *inner,
                    RngSeed(*seed),
                    workers,
                )
                .config()?;
                write_json(
                    dir,
                    "bias",
                    &json!({"hypothesis": report, "estimation": est}),
                )?
            } else {
                write_json(dir, "bias", &report)?
            };
            println!(
                "bias against = {:.4} (se {:.4}), bias in favor = {:.4} (se {:.4}) at psi' = {}",
                report.bias_against.estimate,
                report.bias_against.se,
                report.bias_in_favor.estimate,
                report.bias_in_favor.se,
                report.sup_attained_at
            );
            println!("wrote {} and {}", csv.display(), jsn.display());
        }
        Cmd::Lindley {
            n,
            xbar,
            sigma0,
            mu0,
            tau0_list,
            delta,
        } => {
            let data = LocationNormalData::new(*n, *xbar, *sigma0).config()?;
            let rows_data = lindley_sweep(&data, *mu0, tau0_list, *delta).config()?;
            let rows: Vec<Vec<String>> = rows_data
                .iter()
                .map(|r| {
                    vec![
                        g10(r.tau0),
                        g10(r.rb_mu0),
                        g10(r.strength_mu0),
                        g10(r.pvalue),
                    ]
                })
                .collect();
            let csv = write_csv(dir, "lindley", "tau0,rb,strength,pvalue", &rows)?;
            let jsn = write_json(dir, "lindley", &rows_data)?;
            for r in &rows_data {
                println!(
                    "tau0 = {:>8}: rb = {:.6e}, strength = {:.6e}, pvalue = {:.6e}",
                    r.tau0, r.rb_mu0, r.strength_mu0, r.pvalue
                );
            }
            println!("wrote {} and {}", csv.display(), jsn.display());
        }
        Cmd::Reproduce { example, seed } => reproduce(dir, workers, *example, RngSeed(*seed))?,
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Worked examples
// ---------------------------------------------------------------------------

fn reproduce(dir: &Path, workers: usize, example: Example, seed: RngSeed) -> Result<(), AppError> {
    let name = example.name();
    match example {
        Example::Example2 => {
            let d1 = LocationNormalData::new(2, 1.47, 1.0).config()?;
            let d2 = LocationNormalData::new(25, 1.0, 1.0).config()?;
            let p1 = pvalue_location_normal(&d1, 2.0);
            let p2 = pvalue_location_normal(&d2, 0.0);
            let ci = confidence_interval(&LocationNormalData::new(4, 0.0, 1.0).config()?, 0.05)
                .config()?;
            let iv = ci.parts()[0];
            let csv = write_csv(
                dir,
                name,
                "n,xbar,sigma0,mu0,pvalue",
                &[
                    vec!["2".into(), g10(1.47), g10(1.0), g10(2.0), g10(p1)],
                    vec!["25".into(), g10(1.0), g10(1.0), g10(0.0), g10(p2)],
                ],
            )?;
            let jsn = write_json(
                dir,
                name,
                &json!({
                    "pvalue_moderate": p1,
                    "pvalue_five_sigma": p2,
                    "confint_alpha": 0.05,
                    "confint_lo": iv.lo,
                    "confint_hi": iv.hi
                }),
            )?;
            println!("p(x̄=1.47, μ0=2, n=2) = {p1:.6}; p at five-sigma statistic = {p2:.6e}");
            println!("wrote {} and {}", csv.display(), jsn.display());
        }
        Example::Example3 => {
            let rows: Vec<Vec<String>> = [0.9, 0.5, 0.1, 0.04, 0.01, 0.001]
                .iter()
                .map(|&p| {
                    let e = e_value_power(p, 0.5).expect("valid p");
                    vec![g10(p), g10(0.5), g10(e)]
                })
                .collect();
            let csv = write_csv(dir, name, "pvalue,a,e_value", &rows)?;
            let rate = simulate_sequential_type1(0.05, 0.5, 0.0, 1.0, 200, 20_000, seed, workers)
                .config()?;
            let jsn = write_json(
                dir,
                name,
                &json!({
                    "e_at_p_004_a_05": e_value_power(0.04, 0.5).expect("valid p"),
                    "sequential_alpha": 0.05,
                    "sequential_type1_rate": rate.estimate,
                    "sequential_type1_se": rate.se
                }),
            )?;
            println!(
                "e(p=0.04, a=0.5) = 2.5; sequential type-I rate = {:.5} <= 0.05",
                rate.estimate
            );
            println!("wrote {} and {}", csv.display(), jsn.display());
        }
        Example::Example4 => {
            let data = LocationNormalData::new(2, 1.47, 1.0).config()?;
            let grid = default_psi_grid(&data, 0.01).config()?;
            let prof = curve(&data, &grid, CurveKind::Profile, 0.5).numeric()?;
            let integ = curve(&data, &grid, CurveKind::Integrated, 0.5).numeric()?;
            let mut rows = Vec::new();
            for (psi, v) in prof.psi.iter().zip(prof.value.iter()) {
                rows.push(vec![g10(*psi), g10(*v), "profile".to_string()]);
            }
            for (psi, v) in integ.psi.iter().zip(integ.value.iter()) {
                rows.push(vec![g10(*psi), g10(*v), "integrated".to_string()]);
            }
            let csv = write_csv(dir, name, "psi,value,kind", &rows)?;
            let jsn = write_json(
                dir,
                name,
                &json!({"profile_argmax": prof.argmax(), "integrated_argmax": integ.argmax()}),
            )?;
            println!(
                "profile argmax = {}, integrated argmax = {}",
                prof.argmax(),
                integ.argmax()
            );
            println!("wrote {} and {}", csv.display(), jsn.display());
        }
        Example::Example5 => {
            let data = ScaleNormalData::new(5, 10.0, 5).config()?;
            let m = scale_normal_mles(&data);
            let csv = write_csv(
                dir,
                name,
                "n,sx2,k,mle,profile_mle,predictive_y",
                &[vec![
                    "5".into(),
                    g10(10.0),
                    "5".into(),
                    g10(m.mle),
                    g10(m.profile_mle),
                    g10(m.predictive_y),
                ]],
            )?;
            let jsn = write_json(dir, name, &m)?;
            println!(
                "mle = {}, profile mle = {}, predictive y = {}",
                m.mle, m.profile_mle, m.predictive_y
            );
            println!("wrote {} and {}", csv.display(), jsn.display());
        }
        Example::Example6 => {
            let data = LocationNormalData::new(2, 1.47, 1.0).config()?;
            let prior = NormalParams::new(0.0, 2.0).config()?;
            let base = BayesInferenceBase::new(data, prior, 0.01).config()?;
            let grid = build_grid(&base, GridTarget::AbsValue).numeric()?;
            let report = evidence_report(&grid, 2.0, 0.5).config()?;
            let rows: Vec<Vec<String>> = grid
                .cells
                .iter()
                .map(|c| {
                    vec![
                        g10(c.midpoint()),
                        g10(c.prior_mass),
                        g10(c.posterior_mass),
                        g10(c.rb),
                    ]
                })
                .collect();
            let csv = write_csv(dir, name, "psi_mid,prior_mass,posterior_mass,rb", &rows)?;
            let jsn = write_json(dir, name, &report)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&report)
                    .map_err(|e| AppError::Numeric(e.to_string()))?
            );
            println!("wrote {} and {}", csv.display(), jsn.display());
        }
        Example::Example7 => {
            let u = urn_evidence(1_000_000, 1_000).config()?;
            let label = jeffreys_label(u.rb).config()?;
            let csv = write_csv(
                dir,
                name,
                "population,revealed,rb,posterior,jeffreys_label",
                &[vec![
                    "1000000".into(),
                    "1000".into(),
                    g10(u.rb),
                    g10(u.posterior),
                    label.to_string(),
                ]],
            )?;
            let jsn = write_json(
                dir,
                name,
                &json!({"rb": u.rb, "posterior": u.posterior, "jeffreys_label": label.to_string()}),
            )?;
            println!(
                "rb = {} ({}), posterior belief = {}",
                u.rb, label, u.posterior
            );
            println!("wrote {} and {}", csv.display(), jsn.display());
        }
        Example::Example8 => {
            let data = LocationNormalData::new(9, 5.0 / 3.0, 1.0).config()?;
            let rows_data =
                lindley_sweep(&data, 0.0, &[1.0, 10.0, 100.0, 1000.0], 0.01).config()?;
            let rows: Vec<Vec<String>> = rows_data
                .iter()
                .map(|r| {
                    vec![
                        g10(r.tau0),
                        g10(r.rb_mu0),
                        g10(r.strength_mu0),
                        g10(r.pvalue),
                    ]
                })
                .collect();
            let csv = write_csv(dir, name, "tau0,rb,strength,pvalue", &rows)?;
            let jsn = write_json(dir, name, &rows_data)?;
            for r in &rows_data {
                println!(
                    "tau0 = {:>6}: rb = {:.6e}, strength = {:.6e}, pvalue = {:.6e}",
                    r.tau0, r.rb_mu0, r.strength_mu0, r.pvalue
                );
            }
            println!("wrote {} and {}", csv.display(), jsn.display());
        }
        Example::Example9 => {
            let data = LocationNormalData::new(9, 5.0 / 3.0, 1.0).config()?;
            let mut rows = Vec::new();
            let mut json_rows = Vec::new();
            for (i, tau0) in [1.0, 10.0, 100.0, 1000.0].into_iter().enumerate() {
                let prior = NormalParams::new(0.0, tau0).config()?;
                let base = BayesInferenceBase::new(data, prior, 0.01).config()?;
                let rep = bias_report(
                    &base,
                    GridTarget::Identity,
                    0.0,
                    0.5,
                    5_000,
                    RngSeed(seed.0.wrapping_add(i as u64)),
                    workers,
                )
                .config()?;
                rows.push(vec![
                    g10(tau0),
                    g10(rep.bias_against.estimate),
                    g10(rep.bias_against.se),
                    g10(rep.bias_in_favor.estimate),
                    g10(rep.bias_in_favor.se),
                    g10(rep.sup_attained_at),
                ]);
                println!(
                    "tau0 = {:>6}: bias against = {:.4}, bias in favor = {:.4}",
                    tau0, rep.bias_against.estimate, rep.bias_in_favor.estimate
                );
                json_rows.push(rep);
            }
            let csv = write_csv(
                dir,
                name,
                "tau0,bias_against,bias_against_se,bias_in_favor,bias_in_favor_se,sup_attained_at",
                &rows,
            )?;
            let jsn = write_json(dir, name, &json_rows)?;
            println!("wrote {} and {}", csv.display(), jsn.display());
        }
    }
    Ok(())
}
