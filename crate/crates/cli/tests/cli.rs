use std::fs;
use std::process::Command;

use sinkchase::experiment::read_summaries_csv;
use sinkchase::{Algorithm, BatchSummary, Ratio};

fn sinkchase() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sinkchase"))
}

#[test]
fn compares_all_algorithms_by_default() {
    let out = sinkchase().args(["--runs", "5"]).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let rows = read_summaries_csv(out.stdout.as_slice()).unwrap();
    let algs: Vec<Algorithm> = rows.iter().map(|r| r.algorithm).collect();
    assert_eq!(algs, Algorithm::ALL);
    assert!(rows.iter().all(|r| r.runs == 5 && r.master_seed == 1));
}

#[test]
fn same_seed_same_output() {
    let args = ["--runs", "8", "--seed", "42", "--algorithm", "2"];
    let a = sinkchase().args(args).output().unwrap();
    let b = sinkchase().args(args).arg("--sequential").output().unwrap();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn writes_json_and_trace_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("summary.json");
    let trace = dir.path().join("trace.jsonl");
    let status = sinkchase()
        .args(["--runs", "3", "--algorithm", "1", "--format", "json"])
        .arg("--out")
        .arg(&out)
        .arg("--trace")
        .arg(&trace)
        .status()
        .unwrap();
    assert!(status.success());
    let summaries: Vec<BatchSummary> = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(summaries.len(), 1);
    assert_eq!(summaries[0].algorithm, Algorithm::Prediction);

    let text = fs::read_to_string(&trace).unwrap();
    let records: Vec<serde_json::Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert!(!records.is_empty());
    for (i, r) in records.iter().enumerate() {
        assert_eq!(r["step"], i as u64 + 1);
        assert_eq!(r["algorithm"], 1);
        assert!(r["events"]["collection_hops"].is_u64());
    }
    let last = records.last().unwrap();
    assert_eq!(last["sink"], last["target"]);
}

#[test]
fn sweep_emits_one_row_per_cell_and_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let matrix = dir.path().join("hops.csv");
    let out = sinkchase()
        .args(["--runs", "4", "--sweep-alpha", "0.1,0.2", "--sweep-beta", "0.25,0.5,inf"])
        .arg("--matrix")
        .arg(&matrix)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let rows = read_summaries_csv(out.stdout.as_slice()).unwrap();
    assert_eq!(rows.len(), 6);
    assert_eq!((rows[5].alpha, rows[5].beta), (Ratio::new(2, 10), Ratio::INFINITY));
    assert!(rows.iter().all(|r| r.algorithm == Algorithm::Heuristic));
    let m = fs::read_to_string(&matrix).unwrap();
    assert_eq!(m.lines().next().unwrap(), "alpha\\beta,0.25,0.5,inf");
    assert_eq!(m.lines().count(), 3);
}

#[test]
fn invalid_config_fails_with_diagnostic() {
    for args in [
        vec!["--target-start", "300,3"],
        vec!["--grid", "0x10"],
        vec!["--persistence", "1.5"],
        vec!["--runs", "0"],
        vec!["--vs", "0"],
        vec!["--tau", "0"],
        vec!["--alpha", "-1"],
        vec!["--algorithm", "4"],
    ] {
        let out = sinkchase().args(&args).output().unwrap();
        assert!(!out.status.success(), "{args:?} should fail");
        assert!(!out.stderr.is_empty(), "{args:?} should explain why");
    }
}
