//! End-to-end tests of the binary: exit codes, formats, determinism, and the
//! Cayley-table round trip.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_burnloops"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn construct_b8_text() {
    let out = run(&["construct", "--family", "B", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("8\n"));
    assert!(text.contains("left_bol: true"));
    assert!(text.contains("moufang: false"));
    // the table part parses back into the same loop
    let l = burnloops::cayley::parse_table(&text).unwrap();
    assert_eq!(l.order(), 8);
}

#[test]
fn construct_b8_json() {
    let out = run(&["construct", "--family", "B", "--n", "2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["order"], 8);
    assert_eq!(v["flags"]["left_bol"], true);
    assert_eq!(v["flags"]["moufang"], false);
    assert_eq!(v["table"].as_array().unwrap().len(), 8);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["construct", "--family", "C", "--n", "3"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--family", "B", "--n", "1"]).status.code(), Some(2));
    assert_eq!(run(&["construct", "--family", "X", "--n", "2"]).status.code(), Some(2));
    assert_eq!(run(&["invariants", "--family", "B", "--n", "2", "--format", "yaml"]).status.code(), Some(2));
    // clap-level parse errors use the same code
    assert_eq!(run(&["bogus-subcommand"]).status.code(), Some(2));
}

#[test]
fn invariants_b12() {
    let out = run(&["invariants", "--family", "B", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("kerphi = C3"));
    assert!(text.contains("p_size = 36"));
    assert!(text.contains("g_order = 24"));
}

#[test]
fn verify_single_instance_csv() {
    let out = run(&["verify", "--family", "C", "--n", "4", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0), "no failing claims expected");
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("family,n,seed,id,paper_anchor,status"));
    assert!(lines.len() > 40, "one row per claim plus the header");
    assert!(text.contains("kernel.kerphi_type"));
}

#[test]
fn verify_range_writes_reports() {
    let dir = std::env::temp_dir().join("burnloops_cli_range_test");
    let _ = std::fs::remove_dir_all(&dir);
    let out = run(&[
        "verify",
        "--family",
        "C",
        "--n",
        "2..6",
        "--format",
        "json",
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    // odd n are skipped inside a C range: 2, 4, 6 remain
    let mut names: Vec<String> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    names.sort();
    assert_eq!(names, ["C_n2.json", "C_n4.json", "C_n6.json"]);
    let report: burnloops::report::Report =
        serde_json::from_str(&std::fs::read_to_string(dir.join("C_n4.json")).unwrap()).unwrap();
    assert_eq!(report.family, "C");
    assert_eq!(report.n, 4);
    assert!(report.claims.iter().all(|c| !c.paper_anchor.is_empty()));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn construct_and_invariants_are_byte_identical_across_runs() {
    for args in [
        vec!["construct", "--family", "C", "--n", "4"],
        vec!["construct", "--family", "B", "--n", "3", "--format", "json"],
        vec!["invariants", "--family", "B", "--n", "2", "--format", "csv"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.stdout, b.stdout, "{args:?} must be deterministic");
    }
}

#[test]
fn starved_bounds_surface_as_internal_errors() {
    // a bound too small for the instance breaks an internal precondition
    let out = run(&["verify", "--family", "B", "--n", "2", "--aut-bound", "4"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["verify", "--family", "B", "--n", "2", "--tuple-budget", "10"]);
    assert_eq!(out.status.code(), Some(1));
    // zero bounds are usage errors
    assert_eq!(
        run(&["verify", "--family", "B", "--n", "2", "--aut-bound", "0"]).status.code(),
        Some(2)
    );
}

#[test]
fn construct_writes_to_a_file() {
    let path = std::env::temp_dir().join("burnloops_cli_construct_test.txt");
    let _ = std::fs::remove_file(&path);
    let out = run(&["construct", "--family", "C", "--n", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let l = burnloops::cayley::parse_table(&text).unwrap();
    assert_eq!(l.order(), 8);
    let _ = std::fs::remove_file(&path);
}

#[test]
fn verify_claims_are_identical_across_runs_and_thread_counts() {
    let base = run(&["verify", "--family", "B", "--n", "2", "--format", "csv"]);
    let again = run(&["verify", "--family", "B", "--n", "2", "--format", "csv"]);
    assert_eq!(base.stdout, again.stdout, "single-instance verify is byte-stable");
    let threaded = Command::new(env!("CARGO_BIN_EXE_burnloops"))
        .args(["verify", "--family", "B", "--n", "2", "--format", "csv"])
        .env("BURNLOOPS_THREADS", "1")
        .output()
        .expect("binary runs");
    assert_eq!(base.stdout, threaded.stdout);
}
