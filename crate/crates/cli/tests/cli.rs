use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn scenario(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../scenarios").join(format!("{name}.json"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_massicot")).args(args).output().unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn descent_writes_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("nested/descent.json");
    let sc = scenario("cyclic100_interval");
    let o = run(&["descent", "--scenario", sc.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let cert: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(cert["kind"], "descent");
    assert!(cert["k"].as_u64().unwrap() <= cert["k_bound"].as_u64().unwrap());

    let v = run(&["verify", "--scenario", sc.to_str().unwrap(), "--certificate", out.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(0), "{}", stderr(&v));
}

#[test]
fn verify_names_the_failing_clause() {
    let dir = tempfile::tempdir().unwrap();
    let sc = scenario("cyclic64_interval");
    let out = dir.path().join("chain.json");
    let o = run(&["chain", "--scenario", sc.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));

    let mut cert: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    cert["stabilized_at"] = Value::Null;
    fs::write(&out, cert.to_string()).unwrap();
    let v = run(&["verify", "--scenario", sc.to_str().unwrap(), "--certificate", out.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(1));
    assert!(stderr(&v).contains("rejected: "), "{}", stderr(&v));

    fs::write(&out, "{\"kind\": \"descent\"").unwrap();
    let v = run(&["verify", "--scenario", sc.to_str().unwrap(), "--certificate", out.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(1));
    assert!(stderr(&v).contains("rejected: parse"));
}

#[test]
fn axioms_pass_on_counting_scenario() {
    let sc = scenario("dihedral8_vertices");
    let o = run(&["axioms", "--scenario", sc.to_str().unwrap(), "--samples", "50"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let report: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["associative"], true);
}

#[test]
fn constants_exact_only() {
    let sc = scenario("heisenberg3_ball");
    let o = run(&["constants", "--scenario", sc.to_str().unwrap(), "--exact-only"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let report: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(report["covers"].as_array().unwrap().iter().all(|r| r["exact"]["exact"] == true));
}

#[test]
fn validation_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"group": {"cyclic": 10}, "lambda": {"elements": [0, 1, 42]}, "b": [0], "n": 2}"#).unwrap();
    let o = run(&["descent", "--scenario", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("lambda"), "{}", stderr(&o));

    fs::write(&bad, r#"{"group": {"cyclic": 10}, "lambda": {"interval": 1}, "b": [0], "n": 2, "colour": 1}"#).unwrap();
    let o = run(&["descent", "--scenario", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));

    let o = run(&["descent", "--scenario", "/nonexistent/scenario.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn repeated_runs_are_identical() {
    let sc = scenario("z4_x_d4");
    for cmd in ["descent", "chain", "model"] {
        let first = run(&[cmd, "--scenario", sc.to_str().unwrap()]);
        assert_eq!(first.status.code(), Some(0), "{}", stderr(&first));
        for _ in 0..2 {
            assert_eq!(run(&[cmd, "--scenario", sc.to_str().unwrap()]).stdout, first.stdout);
        }
    }
}

#[test]
fn seed_override_is_accepted() {
    let sc = scenario("cyclic12_subgroup");
    let o = run(&["model", "--scenario", sc.to_str().unwrap(), "--seed", "9", "--budget-depth", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let model: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(model["k"], serde_json::json!([0, 4, 8]));
}
