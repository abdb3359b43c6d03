//! Serialization contracts: report documents are flat key/value JSON with
//! stable field names, and interval sets appear as `{lo, hi}` pairs.

use evidence_core::bias::bias_report;
use evidence_core::freq::LocationNormalData;
use evidence_core::kernel::{NormalParams, RngSeed};
use evidence_core::relbel::{build_grid, evidence_report, BayesInferenceBase, GridTarget};

fn example_base() -> BayesInferenceBase {
    BayesInferenceBase::new(
        LocationNormalData::new(2, 1.47, 1.0).unwrap(),
        NormalParams::new(0.0, 2.0).unwrap(),
        0.01,
    )
    .unwrap()
}

#[test]
fn evidence_report_json_field_names() {
    let grid = build_grid(&example_base(), GridTarget::AbsValue).unwrap();
    let report = evidence_report(&grid, 2.0, 0.5).unwrap();
    let v: serde_json::Value = serde_json::to_value(&report).unwrap();
    let obj = v.as_object().unwrap();
    for field in [
        "estimate",
        "plausible",
        "plausible_content",
        "rb_at_hypothesis",
        "strength",
        "credible",
        "gamma",
        "credible_contained",
        "bf_at_hypothesis",
        "jeffreys_label",
    ] {
        assert!(obj.contains_key(field), "missing field {field}");
    }
    assert_eq!(obj.len(), 10, "unexpected extra fields: {:?}", obj.keys());
    assert!(v["jeffreys_label"].is_string());
    let part = &v["plausible"][0];
    assert!(part["lo"].is_f64() && part["hi"].is_f64());
}

#[test]
fn bias_report_json_records_rng_and_seed() {
    let report = bias_report(
        &example_base(),
        GridTarget::AbsValue,
        2.0,
        0.5,
        500,
        RngSeed(9),
        1,
    )
    .unwrap();
    let v: serde_json::Value = serde_json::to_value(&report).unwrap();
    let obj = v.as_object().unwrap();
    for field in [
        "bias_against",
        "bias_in_favor",
        "delta",
        "reps",
        "seed",
        "rng",
        "sup_attained_at",
        "empty_candidates",
    ] {
        assert!(obj.contains_key(field), "missing field {field}");
    }
    assert!(v["rng"].as_str().unwrap().contains("ChaCha12"));
    assert_eq!(v["seed"], 9);
    assert!(v["bias_against"]["estimate"].is_f64());
    assert!(v["bias_against"]["se"].is_f64());
}
