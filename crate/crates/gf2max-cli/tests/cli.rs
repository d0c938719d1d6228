//! End-to-end tests driving the compiled binary.

use std::process::{Command, Output};

use gf2max::group::refdata;

fn gf2max_bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gf2max"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = gf2max_bin(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 output")
}

#[test]
fn decode_prints_grid() {
    assert_eq!(stdout_of(&["decode", "172", "--n", "3"]), "001\n101\n010\n");
}

#[test]
fn encode_grid_and_code_agree() {
    assert_eq!(stdout_of(&["encode", "001/101/010"]), "172\n");
    assert_eq!(stdout_of(&["encode", "172", "--n", "3"]), "172\n");
}

#[test]
fn encode_code_without_dimension_is_an_error() {
    let out = gf2max_bin(&["encode", "172"]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("--n is required"), "stderr: {err}");
}

#[test]
fn gen_exhaustive_lists_the_whole_class_sorted() {
    let text = stdout_of(&["gen", "--poly", "x^3+x+1"]);
    let codes: Vec<u64> = text.lines().map(|l| l.parse().unwrap()).collect();
    assert_eq!(codes, refdata::N3_CLASS_X3_X_1);
}

#[test]
fn gen_sampled_is_seed_stable() {
    let args = [
        "gen", "--poly", "11", "--mode", "sampled", "--count", "5", "--seed", "42",
    ];
    let first = stdout_of(&args);
    let second = stdout_of(&args);
    assert_eq!(first, second);
    assert_eq!(first.lines().count(), 5);
}

#[test]
fn gen_json_has_the_report_schema() {
    let text = stdout_of(&[
        "gen", "--poly", "11", "--mode", "sampled", "--count", "2", "--seed", "9", "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["n"], 3);
    assert_eq!(v["polynomial"], "x^3+x+1");
    assert_eq!(v["mode"], "sampled");
    assert_eq!(v["seed"], 9);
    assert_eq!(v["count"], 2);
    assert_eq!(v["codes"].as_array().unwrap().len(), 2);
    assert!(v["timings"]["total_ms"].as_f64().unwrap() >= 0.0);
}

#[test]
fn verify_small_dimension_passes() {
    let out = gf2max_bin(&["verify", "--n", "3"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(
        text.lines().filter(|l| l.starts_with("PASS")).count() >= 7,
        "output: {text}"
    );
    assert!(!text.contains("FAIL"), "output: {text}");
}

#[test]
fn verify_past_the_census_cap_suggests_sampling() {
    let out = gf2max_bin(&["verify", "--n", "6"]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("cap exceeded"), "stderr: {err}");
    assert!(err.contains("sampled"), "stderr: {err}");
}

#[test]
fn stream_returns_to_the_seed_at_full_period() {
    let text = stdout_of(&[
        "stream",
        "--matrix",
        "172",
        "--n",
        "3",
        "--seed-state",
        "100",
        "--steps",
        "7",
    ]);
    let states: Vec<&str> = text.lines().collect();
    assert_eq!(states.len(), 7);
    assert_eq!(states.last(), Some(&"100"));
    let mut unique = states.clone();
    unique.sort();
    unique.dedup();
    assert_eq!(unique.len(), 7);
}

#[test]
fn polys_lists_both_cubics() {
    assert_eq!(
        stdout_of(&["polys", "--n", "3"]),
        "x^3+x+1 (11)\nx^3+x^2+1 (13)\n"
    );
}

#[test]
fn count_reports_the_total() {
    let text = stdout_of(&["count", "--n", "3"]);
    assert!(text.contains("24 * 2 = 48"), "output: {text}");
}

#[test]
fn zero_dimension_is_a_usage_error() {
    let out = gf2max_bin(&["polys", "--n", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn non_primitive_polynomial_is_rejected_with_the_reason() {
    let out = gf2max_bin(&["gen", "--poly", "x^4+x^3+x^2+x+1"]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(
        err.contains("polynomial must be primitive"),
        "stderr: {err}"
    );
}
