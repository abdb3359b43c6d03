//! End-to-end tests of the `evid` binary: exit codes, files written, and
//! byte-identical reruns.

use std::path::Path;
use std::process::{Command, Output};

fn evid(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_evid"))
        .arg("--out-dir")
        .arg(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn read(dir: &Path, name: &str) -> Vec<u8> {
    std::fs::read(dir.join(name)).unwrap_or_else(|e| panic!("missing {name}: {e}"))
}

#[test]
fn every_reproduce_example_exits_zero_and_writes_files() {
    let tmp = tempfile::tempdir().unwrap();
    for k in 2..=9 {
        let name = format!("example{k}");
        let out = evid(tmp.path(), &["reproduce", &name]);
        assert!(
            out.status.success(),
            "{name} failed: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert!(
            tmp.path().join(format!("{name}.csv")).exists(),
            "{name}.csv"
        );
        assert!(
            tmp.path().join(format!("{name}.json")).exists(),
            "{name}.json"
        );
    }
}

#[test]
fn example6_prints_the_report_and_is_reproducible() {
    let tmp = tempfile::tempdir().unwrap();
    let out1 = evid(tmp.path(), &["reproduce", "example6"]);
    assert!(out1.status.success());
    let stdout = String::from_utf8_lossy(&out1.stdout);
    assert!(
        stdout.contains("\"estimate\""),
        "report not printed: {stdout}"
    );
    assert!(stdout.contains("\"plausible\""));
    let csv1 = read(tmp.path(), "example6.csv");
    let json1 = read(tmp.path(), "example6.json");

    let out2 = evid(tmp.path(), &["reproduce", "example6"]);
    assert!(out2.status.success());
    assert_eq!(
        csv1,
        read(tmp.path(), "example6.csv"),
        "csv changed between runs"
    );
    assert_eq!(
        json1,
        read(tmp.path(), "example6.json"),
        "json changed between runs"
    );
    assert_eq!(out1.stdout, out2.stdout);
}

#[test]
fn seeded_monte_carlo_outputs_are_byte_identical_across_worker_counts() {
    let tmp = tempfile::tempdir().unwrap();
    let args = ["two-stage", "--reps", "200000", "--seed", "7"];
    let out = evid(tmp.path(), &args);
    assert!(out.status.success());
    let first = read(tmp.path(), "two-stage.json");

    let mut with_workers = vec!["--workers", "3"];
    with_workers.extend_from_slice(&args);
    let out = evid(tmp.path(), &with_workers);
    assert!(out.status.success());
    assert_eq!(
        first,
        read(tmp.path(), "two-stage.json"),
        "workers changed the estimate"
    );
}

#[test]
fn pvalue_subcommand_prints_the_example_value() {
    let tmp = tempfile::tempdir().unwrap();
    let out = evid(
        tmp.path(),
        &[
            "pvalue", "--n", "2", "--xbar", "1.47", "--mu0", "2", "--sigma0", "1",
        ],
    );
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("0.4535"), "stdout: {stdout}");
    let csv = String::from_utf8(read(tmp.path(), "pvalue.csv")).unwrap();
    assert!(csv.starts_with("n,xbar,sigma0,mu0,pvalue"));
    assert!(csv.contains("4.535359031e-1"), "csv: {csv}");
}

#[test]
fn degenerate_rb_configuration_reports_empty_plausible_region() {
    // n = 0 leaves the posterior equal to the prior: no cell carries evidence
    let tmp = tempfile::tempdir().unwrap();
    let out = evid(
        tmp.path(),
        &[
            "rb", "--n", "0", "--xbar", "0", "--psi0", "1.0", "--tau0", "2", "--gamma", "0.5",
        ],
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let json: serde_json::Value = serde_json::from_slice(&read(tmp.path(), "rb.json")).unwrap();
    assert!(json["plausible"].as_array().unwrap().is_empty());
    assert_eq!(json["plausible_content"].as_f64().unwrap(), 0.0);
}

#[test]
fn unknown_flag_exits_with_usage_error() {
    let tmp = tempfile::tempdir().unwrap();
    let out = evid(tmp.path(), &["pvalue", "--does-not-exist", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_configuration_exits_two() {
    let tmp = tempfile::tempdir().unwrap();
    let out = evid(tmp.path(), &["confint", "--alpha", "1.5"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("alpha"), "stderr: {err}");

    let out = evid(tmp.path(), &["rb", "--tau0", "-1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn out_dir_can_come_from_the_environment() {
    let tmp = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_evid"))
        .env("EVIDENCE_OUT_DIR", tmp.path())
        .args(["pvalue", "--n", "2", "--xbar", "1.47", "--mu0", "2"])
        .output()
        .expect("binary runs");
    assert!(out.status.success());
    assert!(tmp.path().join("pvalue.csv").exists());
    assert!(tmp.path().join("pvalue.json").exists());
}

#[test]
fn rb_grid_csv_has_the_documented_header() {
    let tmp = tempfile::tempdir().unwrap();
    let out = evid(tmp.path(), &["rb"]);
    assert!(out.status.success());
    let csv = String::from_utf8(read(tmp.path(), "rb.csv")).unwrap();
    assert!(csv.starts_with("psi_mid,prior_mass,posterior_mass,rb\n"), "{csv:.80}");
}

#[test]
fn lindley_columns_hold_the_pvalue_constant() {
    let tmp = tempfile::tempdir().unwrap();
    let out = evid(tmp.path(), &["lindley", "--tau0-list", "1,10,100"]);
    assert!(out.status.success());
    let csv = String::from_utf8(read(tmp.path(), "lindley.csv")).unwrap();
    let pvals: Vec<&str> = csv
        .lines()
        .skip(1)
        .map(|l| l.rsplit(',').next().unwrap())
        .collect();
    assert_eq!(pvals.len(), 3);
    assert!(
        pvals.windows(2).all(|w| w[0] == w[1]),
        "pvalue column varies: {pvals:?}"
    );
}
