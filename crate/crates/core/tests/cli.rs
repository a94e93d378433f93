use std::process::{Command, Output};

use serde_json::Value;

fn nilcube(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilcube"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn dim_three_three_char_three() {
    let out = nilcube(&["dim", "-p", "3", "-m", "3,3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["dim"], 1);
    assert_eq!(v["schema"], 1);
}

#[test]
fn nilpotency_matches_closed_form() {
    let out = nilcube(&["nilpotency", "-p", "2", "-d", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["C"], 7);
    assert_eq!(v["witness"], serde_json::json!([1, 1, 2, 3, 4, 1]));
}

#[test]
fn verify_tables_char_two() {
    let out = nilcube(&["verify", "tables", "-p", "2", "--max-norm", "7"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["passed"], true);
}

#[test]
fn strict_verify_reports_failure() {
    // The closed-form tables are bases but not always the lexicographically least.
    let out = nilcube(&["verify", "tables", "-p", "0", "--max-norm", "3", "--strict"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn table_and_basis_as_csv() {
    let out = nilcube(&["--format", "csv", "table", "-p", "2", "-m", "2,2,1,1,1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, "index,word\n0,1 1 2 2 3 4 5\n1,2 2 1 1 3 4 5\n");
}

#[test]
fn certify_and_composition() {
    let v = json(&nilcube(&["certify", "-p", "3", "-d", "6"]));
    assert_eq!(v["independent"], true);
    assert_eq!(v["method"], "phi_k-recursive");
    let out = nilcube(&["composition", "-p", "2", "-d", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["complete"], true);
    assert_eq!(v["basis"].as_array().unwrap().len(), 30);
}

#[test]
fn generators_count() {
    let v = json(&nilcube(&["gens", "-p", "0", "-d", "2", "--count-only"]));
    assert_eq!(v["total"], 11);
    assert_eq!(v["max_degree"], 6);
    assert!(v.get("generators").is_none());
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["dim", "-p", "6", "-m", "1,1"][..],
        &["dim", "-p", "2"],
        &["certify", "-p", "2", "-d", "9"],
        &["bogus"],
    ] {
        let out = nilcube(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn identical_runs_are_byte_identical() {
    let args = ["gens", "-p", "3", "-d", "3", "--draws", "3", "--seed", "11"];
    let a = nilcube(&args);
    let b = nilcube(&args);
    assert_eq!(a.stdout, b.stdout);
    let args = ["basis", "-p", "0", "-m", "2,2,1"];
    assert_eq!(nilcube(&args).stdout, nilcube(&args).stdout);
}
