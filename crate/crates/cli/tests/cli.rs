use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_padic-codes"))
        .args(args)
        .env("PADIC_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

#[test]
fn factor_labels_cosets() {
    assert_eq!(
        stdout(&["factor", "--n", "7", "--p", "2"]),
        "C0: 1,1\nC1: 1,1,0,1\nC3: 1,0,1,1\n"
    );
}

#[test]
fn lift_methods_agree() {
    let hensel = stdout(&["lift", "--n", "7", "--p", "2", "--prec", "4"]);
    let pth = stdout(&[
        "lift",
        "--n",
        "7",
        "--p",
        "2",
        "--prec",
        "4",
        "--method",
        "pth-power",
    ]);
    assert_eq!(hensel, pth);
    assert!(hensel.lines().any(|l| l == "-1,5,6,1"), "{hensel}");
}

#[test]
fn solve_prints_root_digits() {
    // X^2 - X + 2 has a root = 0 mod 2; check it by substitution.
    let out = stdout(&["solve", "--poly", "2,-1,1", "--p", "2", "--prec", "16"]);
    let r: u64 = out.trim().parse().unwrap();
    assert_eq!((r * r + 2 + (1 << 16) - r) % (1 << 16), 0);
    let digits = stdout(&[
        "solve", "--poly", "2,-1,1", "--p", "2", "--prec", "16", "--digits",
    ]);
    let back = digits
        .trim()
        .chars()
        .rev()
        .fold(0u64, |acc, c| 2 * acc + c.to_digit(2).unwrap() as u64);
    assert_eq!(back, r);
}

#[test]
fn code_info_round_trips_through_gens() {
    let info = json(&[
        "code",
        "info",
        "--n",
        "7",
        "--p",
        "2",
        "--a",
        "2",
        "--exponents",
        "0,2,1",
    ]);
    assert_eq!(info["type"], "1^1 2^3");
    assert_eq!(info["dual_type"], "1^3 2^3");
    assert_eq!(info["size_exp"], 5);
    let gens = info["ideal"]["gens"].as_str().unwrap();
    let again = json(&[
        "code", "info", "--n", "7", "--p", "2", "--a", "2", "--gens", gens,
    ]);
    assert_eq!(again, info);
}

#[test]
fn code_distance_of_octacode() {
    let info = json(&[
        "code",
        "distance",
        "--n",
        "7",
        "--p",
        "2",
        "--a",
        "2",
        "--exponents",
        "0,2,0",
        "--extend",
        "zero_sum",
    ]);
    assert_eq!(info["d_lee"], 4);
    assert_eq!(info["d_star_lee"], 6);
}

#[test]
fn dual_is_an_involution() {
    let base = ["--n", "7", "--p", "2", "--a", "3", "--exponents", "1,3,0"];
    let dual = json(&[&["code", "dual"][..], &base].concat());
    let exps: Vec<String> = dual["ideal"]["exponents"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.to_string())
        .collect();
    let joined = exps.join(",");
    let back = json(&[
        "code",
        "dual",
        "--n",
        "7",
        "--p",
        "2",
        "--a",
        "3",
        "--exponents",
        &joined,
    ]);
    assert_eq!(back["ideal"]["exponents"], serde_json::json!([1, 3, 0]));
}

#[test]
fn census_lists_every_code() {
    let table = stdout(&["census", "--n", "7", "--p", "2", "--a", "2"]);
    assert_eq!(table.lines().count(), 1 + 27);
    let rows = json(&[
        "census", "--n", "7", "--p", "2", "--a", "2", "--format", "json",
    ]);
    assert_eq!(rows.as_array().unwrap().len(), 27);
    let csv = stdout(&[
        "census", "--n", "7", "--p", "2", "--a", "2", "--format", "csv",
    ]);
    assert_eq!(csv.lines().count(), 28);
}

#[test]
fn census_respects_budget() {
    let out = run(&[
        "census",
        "--n",
        "7",
        "--p",
        "2",
        "--a",
        "2",
        "--max-enum",
        "10",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["code"], "BudgetExceeded");
}

#[test]
fn domain_errors_exit_one_with_json() {
    let out = run(&[
        "code",
        "info",
        "--n",
        "6",
        "--p",
        "2",
        "--a",
        "2",
        "--exponents",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["code"], "NotCoprime");
    assert_eq!(err["context"]["command"], "code");

    let out = run(&["catalog", "qr", "--n", "11"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(
        run(&["code", "info", "--n", "7", "--p", "2"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["catalog", "bch"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn catalog_table_and_qr() {
    let table = stdout(&["catalog", "table1"]);
    assert_eq!(table, include_str!("../../core/tests/golden/table1.txt"));
    let qr = json(&["catalog", "qr", "--n", "7", "--prec", "6"]);
    assert_eq!(qr["type"], "1^4");
    assert_eq!(qr["extended"]["self_dual"], true);
}

#[test]
fn verify_suite_passes() {
    let a = stdout(&["verify", "--suite", "paper"]);
    assert!(a.ends_with("14 of 14 checks passed\n"), "{a}");
    let b = stdout(&["verify", "--only", "1,2,14"]);
    assert_eq!(b.lines().filter(|l| l.starts_with("PASS")).count(), 3);
    let v = json(&["verify", "--only", "7", "--format", "json"]);
    assert_eq!(v["passed"], true);
}
