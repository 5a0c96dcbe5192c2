use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(name)
}

fn budgeted(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_budgeted")).args(args).output().unwrap()
}

fn ok_json(args: &[&str]) -> Value {
    let out = budgeted(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn solve_fig1() {
    let fig1 = fixture("fig1.json");
    let v = ok_json(&["solve", fig1.to_str().unwrap(), "--epsilon", "1/2"]);
    assert_eq!(v["solution"]["members"], serde_json::json!([0, 2]));
    assert_eq!(v["solution"]["profit"], "10/1");
    assert_eq!(v["internal_epsilon"], "1/16");
    let exact = ok_json(&["exact", fig1.to_str().unwrap()]);
    assert_eq!(exact["solution"]["profit"], "10/1");
}

#[test]
fn nps_reports_slack() {
    let fig1 = fixture("fig1.json");
    let v = ok_json(&["nps", fig1.to_str().unwrap(), "--strategy", "lagrangian"]);
    assert_eq!(v["optimum"], "10/1");
    assert!(v["certificate"]["exact"].as_bool().unwrap());
    let slack: i64 = v["slack"].as_str().unwrap().trim_end_matches("/1").parse().unwrap();
    assert!(slack >= 0);
}

#[test]
fn repset_and_exset() {
    let fig2 = fixture("fig2_shape.json");
    let r = ok_json(&["repset", fig2.to_str().unwrap(), "--epsilon", "1/2"]);
    assert_eq!(r["repset"]["size"], 6);
    assert_eq!(r["repset"]["bound"], Value::Null);
    let x = ok_json(&["exset", fig2.to_str().unwrap(), "--epsilon", "1/2", "--alpha", "exact"]);
    assert_eq!(x["classes"]["3"]["exchange_set"], serde_json::json!([0, 1, 2, 3, 4, 5]));
}

#[test]
fn verify_checks() {
    let dir = tempfile::tempdir().unwrap();
    let fig1 = fixture("fig1.json");
    let f = fig1.to_str().unwrap();
    let cand = dir.path().join("a.json");
    std::fs::write(&cand, "[0]").unwrap();
    let c = cand.to_str().unwrap();
    let v = ok_json(&["verify", f, "--candidate", c, "--check", "exchange", "--epsilon", "1/2", "--class", "3"]);
    assert_eq!(v["result"]["report"]["verdict"], false);
    std::fs::write(&cand, r#"{"members": [0, 2]}"#).unwrap();
    let v = ok_json(&["verify", f, "--candidate", c]);
    assert_eq!(v["result"]["verdict"], true);
    assert_eq!(v["result"]["ratio"], "1/1");
    let v = ok_json(&["verify", f, "--candidate", c, "--check", "representative", "--epsilon", "1/3"]);
    assert_eq!(v["result"]["report"]["verdict"], true);
    std::fs::write(&cand, "[0, 1]").unwrap();
    let v = ok_json(&["verify", f, "--candidate", c]);
    assert_eq!(v["result"]["verdict"], false);
}

#[test]
fn generated_instance_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("g.json");
    let i = inst.to_str().unwrap();
    let out = budgeted(&["gen", "--family", "bm", "--vertices", "6", "--edge-prob", "1/2", "--seed", "42", "--report", i]);
    assert!(out.status.success() && out.stdout.is_empty());
    let again = budgeted(&["gen", "--family", "bm", "--vertices", "6", "--edge-prob", "1/2", "--seed", "42"]);
    assert_eq!(std::fs::read(&inst).unwrap(), again.stdout);
    let solved = ok_json(&["solve", i, "--epsilon", "1/3", "--report", dir.path().join("r.json").to_str().unwrap()]);
    let sol = dir.path().join("s.json");
    std::fs::write(&sol, serde_json::to_string(&solved["solution"]).unwrap()).unwrap();
    let v = ok_json(&["verify", i, "--candidate", sol.to_str().unwrap()]);
    assert_eq!(v["result"]["verdict"], true);
    let zero = budgeted(&["gen", "--edge-prob", "0"]);
    let doc: Value = serde_json::from_slice(&zero.stdout).unwrap();
    assert_eq!(doc["elements"], serde_json::json!([]));
    let bi = ok_json(&["gen", "--family", "bi", "--kinds", "graphic,explicit", "--n", "7", "--seed", "3"]);
    assert_eq!(bi["constraint"]["type"], "matroid_intersection");
}

#[test]
fn bench_rows() {
    let dir = tempfile::tempdir().unwrap();
    let empty = budgeted(&["bench", dir.path().to_str().unwrap()]);
    assert!(empty.status.success());
    assert_eq!(String::from_utf8(empty.stdout).unwrap(), "instance,epsilon,profit,opt,ratio,repset_size,repset_bound,wall_ms\n");
    let out = budgeted(&["bench", fixture("fig1.json").to_str().unwrap(), "--epsilon", "1/2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(&row[1..5], &["1/2", "10/1", "10/1", "1/1"]);
    assert_eq!(row[7], "");
}

#[test]
fn exit_codes() {
    let fig1 = fixture("fig1.json");
    let f = fig1.to_str().unwrap();
    let code = |args: &[&str]| budgeted(args).status.code().unwrap();
    assert_eq!(code(&["solve", "/nonexistent.json", "--epsilon", "1/2"]), 2);
    assert_eq!(code(&["solve", f, "--epsilon", "3/4"]), 2);
    assert_eq!(code(&["solve", f, "--epsilon", "half"]), 2);
    assert_eq!(code(&["solve", f]), 2);
    assert_eq!(code(&["exact", f, "--max-exhaustive", "2"]), 3);
    assert_eq!(code(&["nps", f, "--strategy", "exhaustive", "--max-exhaustive", "2"]), 3);
    assert_eq!(code(&["verify", f, "--candidate", f, "--check", "representative"]), 2);
    assert_eq!(code(&["gen", "--family", "bi", "--kinds", "uniform"]), 2);
    assert_eq!(code(&["bench", "/nonexistent"]), 2);
    // solve degrades gracefully when exhaustive search is capped
    assert_eq!(code(&["solve", f, "--epsilon", "1/2", "--strategy", "exhaustive", "--max-exhaustive", "1"]), 0);
}
