use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_minusclass")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let out = bin(args);
    let v = serde_json::from_slice(&out.stdout).expect("json report");
    (out.status.code().unwrap(), v)
}

#[test]
fn monoid_json_has_the_report_keys() {
    let (code, v) = json(&["monoid", "9", "--json"]);
    assert_eq!(code, 0);
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["command", "config", "results", "verdict"]);
    assert_eq!(v["verdict"], "FREE");
    assert_eq!(v["command"], "monoid 9 --json");
    assert_eq!(v["results"]["report"]["counts"]["t"], 3);
}

#[test]
fn monoid_tsv_default() {
    let out = bin(&["monoid", "3,6"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l == "#S\t32"));
    assert!(text.lines().any(|l| l == "#T\t23"));
    assert!(text.lines().any(|l| l == "verdict\tNOT-FREE"));
}

#[test]
fn usage_errors_exit_64() {
    for args in [
        &["monoid", "3,,6"][..],
        &["monoid", "x"],
        &["monoid", "0"],
        &["frobnicate"],
        &["spectrum", "--p", "4", "--r", "2"],
        &["spectrum", "--p", "3", "--r", "2", "--epsilon", "3"],
        &["verify", "9", "--checks", "nope"],
    ] {
        let out = bin(args);
        assert_eq!(out.status.code(), Some(64), "{args:?}");
        assert!(!out.stderr.is_empty());
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn capacity_errors_exit_65() {
    assert_eq!(bin(&["monoid", "30", "--max-order", "20"]).status.code(), Some(65));
    assert_eq!(bin(&["verify", "512"]).status.code(), Some(65));
    assert_eq!(bin(&["spectrum", "--p", "7", "--r", "5"]).status.code(), Some(65));
}

#[test]
fn data_errors_exit_66() {
    assert_eq!(bin(&["ingest", "/nonexistent/table.csv"]).status.code(), Some(66));
    let dir = std::env::temp_dir().join(format!("minusclass-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad_header = dir.join("header.csv");
    std::fs::write(&bad_header, "q,tag,value\n19,-8,2\n").unwrap();
    assert_eq!(bin(&["ingest", bad_header.to_str().unwrap()]).status.code(), Some(66));
    let bad_row = dir.join("row.csv");
    std::fs::write(&bad_row, "q,field_tag,ord_value\n19,-8,2\n37,-4,two\n").unwrap();
    let out = bin(&["ingest", bad_row.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(66));
    assert!(String::from_utf8_lossy(&out.stderr).contains("row 2"));
}

#[test]
fn ingest_congruence_failure_exits_2() {
    let dir = std::env::temp_dir().join(format!("minusclass-cong-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cong.csv");
    std::fs::write(&path, "q,field_tag,ord_value\n19,-8,2\n17,-4,2\n").unwrap();
    let (code, v) = json(&["ingest", path.to_str().unwrap(), "--json"]);
    assert_eq!(code, 2);
    assert_eq!(v["results"]["failed_rows"], serde_json::json!([2]));
}

#[test]
fn bundled_fixtures() {
    let (code, v) = json(&["ingest", data("class_values_p3_r2.csv").to_str().unwrap(), "--json"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["attained"], serde_json::json!([2, 4, 6, 7, 8, 9, 10, 11]));
    let (code, v) = json(&["ingest", data("adversarial_p3_r2.csv").to_str().unwrap(), "--json"]);
    assert_eq!(code, 2);
    assert_eq!(v["verdict"], "FAIL");
    assert_eq!(v["results"]["failed_rows"], serde_json::json!([2, 3, 4]));
}

#[test]
fn verify_small_group() {
    let out = bin(&["verify", "9"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.ends_with("verdict\tPASS\n"));
    assert!(!text.contains("\tfail\n"));
}

#[test]
fn spectrum_is_reproducible() {
    let args = ["spectrum", "--p", "3", "--r", "2", "--samples", "50", "--seed", "11", "--json"];
    let a = bin(&args);
    let b = bin(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let other = bin(&["spectrum", "--p", "3", "--r", "2", "--samples", "50", "--seed", "12", "--json"]);
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn help_and_version_exit_0() {
    assert_eq!(bin(&["--help"]).status.code(), Some(0));
    assert_eq!(bin(&["--version"]).status.code(), Some(0));
}
