//! Golden-file tests pinning the CLI output schemas and exit codes.

use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lapspec"))
        .args(args)
        .env_remove("LAPSPEC_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn assert_golden(args: &[&str], name: &str, code: i32) {
    let out = run(args);
    let stdout = String::from_utf8(out.stdout).expect("utf8 output");
    assert_eq!(stdout, golden(name), "stdout mismatch for {args:?}");
    assert_eq!(out.status.code(), Some(code), "exit code for {args:?}");
    if name.ends_with(".json") {
        serde_json::from_str::<serde_json::Value>(&stdout).expect("valid JSON");
    }
}

#[test]
fn spectrum_json() {
    assert_golden(&["spectrum", "K1 v 3K1", "--format", "json"], "spectrum_star.json", 0);
}

#[test]
fn spectrum_text_not_integral() {
    assert_golden(&["spectrum", "P4"], "spectrum_p4.txt", 0);
}

#[test]
fn construct_realizable() {
    assert_golden(
        &["construct", "S{1,4}_6^6", "--format", "json"],
        "construct_s_1_4_6_6.json",
        0,
    );
}

#[test]
fn construct_obstructed() {
    assert_golden(
        &["construct", "S{2,5}_7^7", "--format", "json"],
        "construct_obstructed.json",
        1,
    );
}

#[test]
fn construct_unknown_suggests_search() {
    assert_golden(
        &["construct", "S{1,8}_8^5", "--format", "json"],
        "construct_unknown.json",
        1,
    );
}

#[test]
fn census_json_and_text() {
    assert_golden(&["census", "4", "--format", "json"], "census_4.json", 0);
    assert_golden(&["census", "6"], "census_6.txt", 0);
}

#[test]
fn search_json() {
    assert_golden(
        &["search", "S{1,4}_6^6", "--format", "json"],
        "search_s_1_4_6_6.json",
        0,
    );
}

#[test]
fn tables_json_all_pass() {
    assert_golden(&["tables", "--format", "json"], "tables.json", 0);
}

#[test]
fn conjectures_json() {
    assert_golden(
        &["conjectures", "--max-n", "6", "--format", "json"],
        "conjectures_6.json",
        0,
    );
}

#[test]
fn errors_are_json_and_exit_coded() {
    // usage error: unparseable expression
    let out = run(&["spectrum", "not an expr", "--format", "json"]);
    assert_eq!(out.status.code(), Some(2));
    let v: serde_json::Value =
        serde_json::from_slice(&out.stdout).expect("errors are valid JSON too");
    assert_eq!(v["status"], "error");
    assert_eq!(v["kind"], "parse");

    // enumeration cap from --max-n
    let out = run(&["search", "S{1,8}_8^5", "--max-n", "6", "--format", "json"]);
    assert_eq!(out.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["kind"], "enumeration_cap");

    // unwritable cache directory surfaces as an I/O error
    let out = run(&[
        "census",
        "4",
        "--cache-dir",
        "/proc/no-such-cache-dir",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["kind"], "io");
}

#[test]
fn cache_dir_flag_persists_census() {
    let dir = tempfile::TempDir::new().unwrap();
    let path = dir.path().to_str().unwrap();
    let out = run(&["census", "5", "--cache-dir", path, "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(dir.path().join("census_n5.g6").is_file());
    assert!(dir.path().join("census_n5.json").is_file());
    // second run reads the cache and prints the identical report
    let again = run(&["census", "5", "--cache-dir", path, "--format", "json"]);
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn label_output_round_trips_as_input() {
    let out = run(&["construct", "S_3,6", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let label = v["target"].as_str().unwrap();
    let again = run(&["search", label, "--format", "json"]);
    assert_eq!(again.status.code(), Some(0));
    let w: serde_json::Value = serde_json::from_slice(&again.stdout).unwrap();
    assert_eq!(w["target"], v["target"]);
    assert!(w["count"].as_u64().unwrap() >= 1);
}
