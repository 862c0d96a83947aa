//! End-to-end tests driving the compiled binary.

use std::path::PathBuf;
use std::process::{Command, Output};

use heightgap::report::{render, EpsilonReport, HeightReport, VerifyReport};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_heightgap"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json<T: serde::de::DeserializeOwned>(out: &Output) -> T {
    let text = String::from_utf8_lossy(&out.stdout);
    serde_json::from_str(&text).unwrap_or_else(|e| panic!("bad JSON: {e}\n{text}"))
}

#[test]
fn height_of_t_is_one() {
    let out = run(&["height", "--field", "F5", "--expr", "t"]);
    assert!(out.status.success());
    let rep: HeightReport = stdout_json(&out);
    assert_eq!(rep.height, "1/1");
}

#[test]
fn height_of_kummer_tuple() {
    let out = run(&["height", "--field", "F5", "-e", "2", "--tuple", "T, 1/T"]);
    assert!(out.status.success());
    let rep: HeightReport = stdout_json(&out);
    assert_eq!(rep.height, "1/1");
}

#[test]
fn height_of_rational_constant_is_zero() {
    let out = run(&["height", "--field", "Q", "--expr", "3/4"]);
    assert!(out.status.success());
    let rep: HeightReport = stdout_json(&out);
    assert_eq!(rep.height, "0/1");
    assert!(rep.support.is_empty());
}

#[test]
fn height_report_round_trips_byte_identically() {
    let out = run(&["height", "--field", "F5", "--tuple", "t, 1/t"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let rep: HeightReport = serde_json::from_str(&text).unwrap();
    assert_eq!(render(&rep).unwrap(), text);
}

#[test]
fn minpoly_of_square_root() {
    let out = run(&["minpoly", "--field", "F5", "-e", "2", "--expr", "T"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("\"degree\": 2"));
    assert!(text.contains("\"height\": \"1/2\""));
}

#[test]
fn sigma_doubles_heights() {
    let out = run(&["sigma", "--field", "F5", "-M", "2", "--expr", "t + 1"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("\"output\": \"t^2 + 1\""));
    assert!(text.contains("\"height_out\": \"2/1\""));
}

#[test]
fn dichotomy_lower_bound_and_zero_at_twist() {
    let out = run(&["dichotomy", "--field", "F5", "--poly", "X1 - t", "--point", "t"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("\"outcome\": \"lower_bound\""));
    assert!(text.contains("\"bound\": \"1/2\""));

    let out = run(&["dichotomy", "--field", "F5", "--poly", "X1 - 1", "--point", "1"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("\"outcome\": \"zero_at_twist\""));
}

#[test]
fn dichotomy_rejects_points_off_the_variety() {
    let out = run(&[
        "dichotomy", "--field", "F5", "--poly", "X1 - t", "--point", "t + 1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("not on the variety"), "{err}");
}

#[test]
fn parse_errors_carry_positions() {
    let out = run(&["epsilon", "--field", "F5", "-n", "2", "--poly", "X1 + + X2"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("1:6"), "{err}");
}

#[test]
fn epsilon_worked_example() {
    let out = run(&["epsilon", "--field", "F5", "-n", "2", "--poly", "X2 - t*X1"]);
    assert!(out.status.success());
    let rep: EpsilonReport = stdout_json(&out);
    assert_eq!(rep.c, "1/4");
    assert_eq!(rep.z, vec![vec!["X1".to_string()]]);
    // Byte-identical round trip.
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(render(&rep).unwrap(), text);
}

#[test]
fn epsilon_constant_field_input() {
    let out = run(&["epsilon", "--field", "F5", "-n", "2", "--poly", "X1 + X2"]);
    assert!(out.status.success());
    let rep: EpsilonReport = stdout_json(&out);
    assert_eq!(rep.c, "1/1");
    assert_eq!(rep.z, vec![vec!["X1 + X2".to_string()]]);
}

#[test]
fn epsilon_base_case() {
    let out = run(&["epsilon", "--field", "F5", "-n", "1", "--poly", "X1^2 - t"]);
    assert!(out.status.success());
    let rep: EpsilonReport = stdout_json(&out);
    assert_eq!(rep.c, "1/2");
    assert!(rep.z.is_empty());
}

fn tmpdir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("heightgap-cli-{name}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn verify_pipeline_pass_fail_and_budget() {
    let dir = tmpdir("verify");
    let pair = dir.join("pair.json");
    let search = dir.join("search.json");
    let out = run(&[
        "epsilon", "--field", "F5", "-n", "2",
        "--poly", "X2 - t*X1",
        "--out", pair.to_str().unwrap(),
        "--emit-search", search.to_str().unwrap(),
        "--bound", "2", "--indices", "1,2",
    ]);
    assert!(out.status.success());

    // PASS, exit 0.
    let out = run(&[
        "verify", "--pair", pair.to_str().unwrap(), "--search", search.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rep: VerifyReport = stdout_json(&out);
    assert_eq!(rep.verdict, "PASS");
    assert_eq!(rep.min_height.as_deref(), Some("1/1"));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(render(&rep).unwrap(), text);

    // Hand-corrupted bound: FAIL with a witness, exit 1.
    let mut doc: EpsilonReport =
        serde_json::from_str(&std::fs::read_to_string(&pair).unwrap()).unwrap();
    doc.c = "10/1".into();
    let bad = dir.join("pair_bad.json");
    std::fs::write(&bad, render(&doc).unwrap()).unwrap();
    let out = run(&[
        "verify", "--pair", bad.to_str().unwrap(), "--search", search.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let rep: VerifyReport = stdout_json(&out);
    assert_eq!(rep.verdict, "FAIL");
    assert!(rep.witness.is_some());

    // Tiny budget: overflow report, exit 2.
    let mut spec: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&search).unwrap()).unwrap();
    spec["budget"] = serde_json::json!(10);
    let tiny = dir.join("search_tiny.json");
    std::fs::write(&tiny, serde_json::to_string_pretty(&spec).unwrap()).unwrap();
    let out = run(&[
        "verify", "--pair", pair.to_str().unwrap(), "--search", tiny.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    let rep: VerifyReport = stdout_json(&out);
    assert_eq!(rep.verdict, "BUDGET_EXCEEDED");
    assert_eq!(rep.budget, Some(10));

    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn extension_field_inputs() {
    let out = run(&["height", "--field", "F5^2", "--expr", "[0,1]*t"]);
    assert!(out.status.success());
    let rep: HeightReport = stdout_json(&out);
    assert_eq!(rep.height, "1/1");
    assert_eq!(rep.field.name, "F5^2");
    assert!(rep.field.modulus.is_some());
}

#[test]
fn selftest_quick_passes() {
    let out = run(&["selftest", "--quick"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("\"pass\": true"));
    let summary = String::from_utf8_lossy(&out.stderr);
    assert!(summary.contains("PASS product_formula"));
}
