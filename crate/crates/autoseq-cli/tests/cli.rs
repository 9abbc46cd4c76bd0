//! Golden-file tests: every subcommand is exercised against a frozen report,
//! and identical invocations must produce byte-identical output.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("missing golden {name}: {e}"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_autoseq"))
        .args(args)
        .env("AUTOSEQ_THREADS", "2")
        .current_dir(fixtures())
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn assert_golden(args: &[&str], golden_name: &str, expect_code: i32) {
    let out = run(args);
    assert_eq!(out.status.code(), Some(expect_code), "exit code for {args:?}: {out:?}");
    assert_eq!(stdout_of(&out), golden(golden_name), "stdout for {args:?}");
}

#[test]
fn gen_period_doubling_first_16() {
    assert_golden(&["gen", "--spec", "pd.json", "--count", "16"], "gen-pd.txt", 0);
}

#[test]
fn gen_csv_format() {
    assert_golden(
        &["gen", "--spec", "pd.json", "--count", "5", "--format", "csv"],
        "gen-pd-csv.txt",
        0,
    );
}

#[test]
fn check_mult_certifies_on_good_input() {
    assert_golden(
        &["check-mult", "--spec", "pd.json", "--n", "1000", "--complete", "--format", "json"],
        "check-mult-pd.txt",
        0,
    );
}

#[test]
fn check_mult_rejects_corrupted_automaton_with_witness() {
    assert_golden(
        &["check-mult", "--dfao", "bad-dfao.json", "--n", "1000", "--format", "json"],
        "check-mult-bad.txt",
        1,
    );
}

#[test]
fn decompose_dfao_matches_spec_canonical_form() {
    assert_golden(
        &["decompose", "--spec-from-dfao", "pd-dfao.json", "--p", "2", "--horizon", "20000"],
        "decompose-pd.txt",
        0,
    );
}

#[test]
fn classify_dense_primitive_12() {
    assert_golden(
        &["classify", "--spec", "primitive12.json", "--bound", "64"],
        "classify-primitive12.txt",
        0,
    );
}

#[test]
fn classify_sparse_indicator() {
    assert_golden(&["classify", "--spec", "sparse.json", "--bound", "64"], "classify-sparse.txt", 0);
}

#[test]
fn mean_of_zero_mean_example() {
    assert_golden(
        &["mean", "--spec", "zero-mean.json", "--n", "100000"],
        "mean-zero.txt",
        0,
    );
}

#[test]
fn kernel_verdicts() {
    assert_golden(
        &["kernel", "--spec", "pd.json", "--t", "1024", "--max-states", "64"],
        "kernel-pd.txt",
        0,
    );
    // the period-doubling variant is 2-automatic only: its base-3 closure
    // blows the class budget
    assert_golden(
        &["kernel", "--spec", "pd.json", "--base", "3", "--t", "1024", "--max-states", "64"],
        "kernel-pd-base3.txt",
        1,
    );
}

#[test]
fn minimize_round_trip() {
    assert_golden(&["minimize", "--dfao", "pd-dfao.json"], "minimize-pd.txt", 0);
}

#[test]
fn pump_is_deterministic_and_valid() {
    let args = ["pump", "--dfao", "pd-dfao.json", "--count", "4", "--seed", "11"];
    assert_golden(&args, "pump-pd.txt", 0);
    // identical seeds, byte-identical reports
    assert_eq!(stdout_of(&run(&args)), stdout_of(&run(&args)));
}

#[test]
fn toeplitz_split() {
    assert_golden(
        &["toeplitz", "--spec", "pd.json", "--n", "200", "--s", "50"],
        "toeplitz-pd.txt",
        0,
    );
    assert_golden(
        &["toeplitz", "--spec", "sparse.json", "--n", "200", "--s", "50"],
        "toeplitz-sparse.txt",
        1,
    );
}

#[test]
fn density_csv() {
    assert_golden(&["density", "--spec", "sparse.json", "--n", "100000"], "density-sparse.txt", 0);
}

#[test]
fn complexity_csv() {
    assert_golden(
        &["complexity", "--spec", "pd.json", "--max-len", "4", "--n", "10000"],
        "complexity-pd.txt",
        0,
    );
}

#[test]
fn export_dot() {
    assert_golden(&["export-dot", "--dfao", "pd-dfao.json"], "export-dot-pd.txt", 0);
}

#[test]
fn usage_errors_exit_2() {
    let out = run(&["gen", "--spec", "no-such-file.json"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["gen"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
}
