use std::process::{Command, Output};

use serde_json::Value;

fn acm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_acm")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = acm(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn degree_matrix_of_a_pair() {
    assert_eq!(json(&["pairs", "matrix", "--a", "1,1", "--b", "2,4"]), serde_json::json!([[1, 3], [1, 3]]));
}

#[test]
fn liaison_of_a_line_in_a_quartic_and_a_quadric() {
    let v = json(&["liaison", "--degree", "1", "--genus", "0", "--s", "4", "--t", "2"]);
    assert_eq!(v, serde_json::json!({"degree": 7, "genus": 6}));
}

#[test]
fn invalid_pair_exits_one() {
    let out = acm(&["pairs", "matrix", "--a", "1,3", "--b", "2,3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("a_i < b_i violated at index 2"));
}

#[test]
fn unknown_divisor_exits_one() {
    let out = acm(&["classify", "quartic", "--divisor", "F9"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["pairs", "matrix", "--a", "1,1"][..],
        &["res", "build", "--case", "ii", "--a", "1,1", "--b", "2,4", "--k", "-1"],
        &["frobnicate"],
        &["--format", "yaml", "pairs", "enumerate", "--degree", "2"],
    ] {
        assert_eq!(acm(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn json_output_round_trips_byte_for_byte() {
    for args in [
        &["pairs", "kind", "--a", "1,2", "--b", "3,4"][..],
        &["pairs", "enumerate", "--degree", "3"],
        &["res", "build", "--case", "ii", "--a", "1,1", "--b", "2,4", "--k", "2"],
        &["picard", "watanabe", "--divisor", "F2"],
        &["classify", "quartic", "--divisor", "F5", "--kmax", "4"],
        &["classify", "low", "--degree", "2", "--type", "quadric-shifted"],
        &["reproduce", "liaison-table"],
    ] {
        let out = acm(args);
        assert!(out.status.success(), "{args:?}");
        let text = String::from_utf8(out.stdout).unwrap();
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string_pretty(&v).unwrap() + "\n", text, "{args:?}");
    }
}

#[test]
fn resolution_build_reports_invariants() {
    let v = json(&["res", "build", "--case", "ii", "--a", "1,1", "--b", "2,4", "--k", "2"]);
    assert_eq!(v["gens"], serde_json::json!([3, 3, 4]));
    assert_eq!(v["degree"], 9);
    assert_eq!(v["genus"], 10);
}

#[test]
fn table_mode_renders_text() {
    let out = acm(&["--format", "table", "classify", "quartic", "--divisor", "F4", "--kmax", "3"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("CITATION"));
    assert!(text.contains("F4:ii.a"));
    assert!(serde_json::from_str::<Value>(&text).is_err());
}

#[test]
fn reproduce_targets_pass() {
    for target in ["degree2-kinds", "degree3-kinds", "F1", "F3", "low-degree-corollaries"] {
        let out = acm(&["--format", "table", "reproduce", target]);
        assert_eq!(out.status.code(), Some(0), "{target}");
        assert!(String::from_utf8_lossy(&out.stdout).contains("rows pass"));
    }
}

#[test]
fn reproduce_rejects_unknown_targets() {
    assert_ne!(acm(&["reproduce", "degree9-kinds"]).status.code(), Some(0));
}
