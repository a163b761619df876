use std::process::{Command, Output};

use serde_json::Value;

fn critlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_critlab")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn omega_fiber_of_two_equal_w0_factors_is_four() {
    let out = critlab(&["omega-fiber", "--taus", "w0:equal,w0:equal"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["value"], 4);
}

#[test]
fn omega_fiber_with_one_distinct_factor_is_two() {
    let out = critlab(&["omega-fiber", "--taus", "w0:equal,w0:distinct,s1s2:na"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["value"], 2);
}

#[test]
fn multiplicity_at_the_identity_has_ratio_two() {
    let out = critlab(&["multiplicity", "--wR", "1", "--m", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["value"]["ratio"], 2);
}

#[test]
fn congruences_mod_52() {
    let out = critlab(&["congruences", "--field-set", "builtin:Qi_cubic13", "--modulus", "52"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["value"]["residues"], serde_json::json!([1, 5, 21, 25]));
    assert_eq!(v["value"]["exact"], true);
}

#[test]
fn split_reports_per_factor_verdicts() {
    let out = critlab(&["split", "--field-set", "builtin:Qi_cubic13", "--prime", "53"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["value"]["totally_split"], true);
    let out = critlab(&["split", "--polys", "x^2+1", "--prime", "7"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["value"]["totally_split"], false);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["bogus"][..],
        &["split", "--field-set", "builtin:nope", "--prime", "43"],
        &["omega-fiber", "--taus", "w9:equal"],
        &["verify", "weyl", "--n", "9"],
        &["congruences", "--modulus", "52"],
    ] {
        assert_eq!(critlab(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn weyl_suite_passes() {
    let out = critlab(&["verify", "weyl", "--n", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["pass"], true);
}

#[test]
fn resolution_suite_reports_the_transcription_failure() {
    let out = critlab(&["verify", "resolution"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    let item =
        |id: &str| v["items"].as_array().unwrap().iter().find(|i| i["check_id"] == id).cloned();
    assert_eq!(item("omega-presentation-invariance").unwrap()["pass"], true);
    assert_eq!(item("verbatim-complex").unwrap()["pass"], false);
}

#[test]
fn markdown_output() {
    let out = critlab(&["--format", "md", "omega-fiber", "--taus", "w0:equal"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("## omega-fiber (PASS)"));
    assert!(text.contains("| check |"));
}

#[test]
fn reports_are_byte_for_byte_reproducible() {
    let args = ["congruences", "--field-set", "builtin:Qsqrt-3_zeta7plus", "--modulus", "21"];
    assert_eq!(critlab(&args).stdout, critlab(&args).stdout);
    let args = ["verify", "steinberg"];
    assert_eq!(critlab(&args).stdout, critlab(&args).stdout);
}
