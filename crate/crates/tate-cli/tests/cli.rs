//! End-to-end checks of the command-line surface: determinism, exit codes,
//! and the documented JSON shapes.

use std::process::Command;

fn tate(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_tate"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn identical_argv_gives_identical_output() {
    let args = [
        "bianchi-counts",
        "-m",
        "13",
        "--prime",
        "3",
        "--format",
        "json",
    ];
    let a = tate(&args);
    let b = tate(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn counts_json_schema() {
    let out = tate(&[
        "bianchi-counts",
        "-m",
        "13",
        "--prime",
        "3",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["m"], 13);
    assert_eq!(v["ell"], 3);
    assert_eq!(v["lambda6"], 2);
    assert_eq!(v["lambda6_star"], 2);
    assert_eq!(v["mu3"], 4);
}

#[test]
fn poincare_json_schema_roundtrip() {
    let out = tate(&[
        "bianchi-poincare",
        "-m",
        "5",
        "--prime",
        "2",
        "--qmax",
        "12",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["m"], 5);
    assert_eq!(v["series"]["num"], serde_json::json!([0, 0, 0, 5, -3]));
    assert_eq!(v["series"]["den"], serde_json::json!([1, -2, 1]));
    // dim H_q = 2q - 1 for the two-D2-summand groups
    assert_eq!(
        v["coeffs"],
        serde_json::json!([5, 7, 9, 11, 13, 15, 17, 19, 21, 23])
    );
}

#[test]
fn graph_json_schema() {
    let out = tate(&["bianchi-graph", "-m", "13", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["ell"], 3);
    assert_eq!(v["vertices"].as_array().unwrap().len(), 4);
    assert_eq!(v["edges"].as_array().unwrap().len(), 2);
    assert_eq!(v["vertices"][0]["type"], "D3");
    assert_eq!(v["edges"][0]["type"], "Z3");
}

#[test]
fn table_check_exit_codes() {
    let ok = tate(&["bianchi-table", "--prime", "3", "--check"]);
    assert!(ok.status.success());
    let text = String::from_utf8_lossy(&ok.stdout);
    assert!(text.contains("mismatched 0"), "summary line: {text}");
}

#[test]
fn usage_errors_exit_two() {
    let bad = tate(&["bianchi-counts", "-m", "13", "--prime", "7"]);
    assert_eq!(bad.status.code(), Some(2));
    let unknown = tate(&["no-such-command"]);
    assert_eq!(unknown.status.code(), Some(2));
}

#[test]
fn coxeter_ct_text_line() {
    let out = tate(&["coxeter-ct", "--id", "25", "--prime", "3"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("m=1"), "{text}");
    assert!(text.contains("D3"), "{text}");
}

#[test]
fn asymptotics_csv_header_and_rows() {
    let out = tate(&["bianchi-asymptotics", "--mmax", "50"]);
    let text = String::from_utf8_lossy(&out.stdout);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "m,delta,lambda6_prime_low,lambda6_prime_high,covolume,ratio_low,ratio_high,scaled_avg_low,scaled_avg_high"
    );
    // squarefree m = 3 mod 4 in 7..=50: 7, 11, 15, 19, 23, 31, 35, 39, 43, 47
    assert_eq!(lines.count(), 10);
}
