//! Exit-code contract, cache behavior and report-format checks for the
//! `logct` binary.

use std::fs;
use std::process::Command;

fn logct(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_logct"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().unwrap_or(-1),
    )
}

#[test]
fn exit_zero_on_verified() {
    let (stdout, _, code) = logct(&["verify", "conjm1", "--p", "1"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("\"status\": \"verified\""));
}

#[test]
fn exit_two_on_usage_error() {
    let (_, stderr, code) = logct(&["compute", "f"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("--p"));
    // even p is a domain error, also usage
    let (_, _, code) = logct(&["compute", "f", "--p", "2"]);
    assert_eq!(code, 2);
    // unknown subcommand: clap's own usage exit
    let (_, _, code) = logct(&["frobnicate"]);
    assert_eq!(code, 2);
}

#[test]
fn exit_three_on_resource_limit() {
    let (_, stderr, code) = logct(&["compute", "f", "--p", "5", "--max-terms", "10"]);
    assert_eq!(code, 3, "stderr: {}", stderr);
}

#[test]
fn compute_values_are_exact_strings() {
    let (stdout, _, code) = logct(&["compute", "f", "--p", "1"]);
    assert_eq!(code, 0);
    let report: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    let coeffs: Vec<&str> = report["value"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    assert_eq!(coeffs, vec!["0/1", "1/6", "1/2", "1/3"]);
    assert_eq!(report["engine_version"], env!("CARGO_PKG_VERSION"));
    assert!(report["problem_hash"].as_str().unwrap().len() == 64);
}

#[test]
fn report_schema_fields_present() {
    let (stdout, _, _) = logct(&["verify", "log-dyson-cyclic", "--p", "3"]);
    let report: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    for field in [
        "command",
        "params",
        "status",
        "value",
        "fitted_constant",
        "sign_note",
        "strategy",
        "elapsed_ms",
        "engine_version",
        "problem_hash",
    ] {
        assert!(report.get(field).is_some(), "missing field {}", field);
    }
}

#[test]
fn cache_round_trip_and_corruption() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let (first, _, code) = logct(&["compute", "f", "--p", "3", "--cache-dir", cache]);
    assert_eq!(code, 0);
    let entries: Vec<_> = fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(entries.len(), 1, "one cache entry after one compute");

    // hit: identical report (timing aside)
    let (second, _, code) = logct(&["compute", "f", "--p", "3", "--cache-dir", cache]);
    assert_eq!(code, 0);
    let strip = |s: &str| {
        s.lines()
            .filter(|l| !l.contains("\"elapsed_ms\""))
            .collect::<Vec<_>>()
            .join("\n")
    };
    assert_eq!(strip(&first), strip(&second));

    // corrupt entry: warn and recompute, never fail or return wrong data
    let path = entries[0].as_ref().unwrap().path();
    fs::write(&path, b"{ not json").unwrap();
    let (third, stderr, code) = logct(&["compute", "f", "--p", "3", "--cache-dir", cache]);
    assert_eq!(code, 0);
    assert!(stderr.contains("corrupt cache entry"), "stderr: {}", stderr);
    assert_eq!(strip(&first), strip(&third));
    // the corrupt entry was rewritten with the good value
    let (fourth, stderr, _) = logct(&["compute", "f", "--p", "3", "--cache-dir", cache]);
    assert!(!stderr.contains("corrupt"));
    assert_eq!(strip(&first), strip(&fourth));
}

#[test]
fn strategy_both_agreement() {
    let (stdout, _, code) = logct(&["compute", "f", "--p", "1", "--strategy", "both"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("\"strategy\": \"both\""));
}

#[test]
fn allow_sign_gates_exit_code() {
    // log-dyson is stated only up to sign, so the verdict is verified
    // either way; conjm1 compares exactly and stays verified. Exercise the
    // flag parsing path on a verified case.
    let (_, _, code) = logct(&["verify", "conjm1", "--p", "1", "--allow-sign"]);
    assert_eq!(code, 0);
}

#[test]
fn invalid_domain_is_usage_not_refuted() {
    // every identity the CLI can state is true, so exit 1 is covered by
    // the Verdict unit tests; bad parameter domains must exit 2
    let (_, _, code) = logct(&["verify", "fusion", "--p", "4", "--n", "1"]);
    assert_eq!(code, 2);
    let (_, _, code) = logct(&["compute", "logdyson-cyclic", "--p", "2"]);
    assert_eq!(code, 2);
}

#[test]
fn table_formats() {
    let (csv, _, code) = logct(&["table", "modules", "--p", "3", "--format", "csv"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = csv.trim().lines().collect();
    assert_eq!(lines.len(), 14, "header + 13 module rows");
    assert!(lines[0].contains("label"));

    let (json, _, _) = logct(&["table", "counts", "--p", "3"]);
    let report: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(report["value"]["irreducibles"], "13");
    assert_eq!(report["value"]["character_dim"], "20");

    let (h, _, _) = logct(&[
        "table", "h", "--p", "3", "--r", "1..3", "--s", "1..3", "--format", "csv",
    ]);
    assert_eq!(h.trim().lines().count(), 10, "header + 9 h-values");
    assert!(h.contains("0/1"), "h_{{1,1}} = 0 present");
}

#[test]
fn virasoro_subcommand() {
    let (stdout, _, code) = logct(&["virasoro", "--p", "3"]);
    assert_eq!(code, 0);
    let report: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(report["status"], "verified");
    assert_eq!(report["value"]["c"], "0/1");
    assert_eq!(report["value"]["h"], "7/1");
    assert_eq!(report["value"]["singular"], true);
    assert_eq!(report["value"]["terms"].as_array().unwrap().len(), 7);
}
