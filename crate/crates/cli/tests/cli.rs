use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn dqw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dqw"))
        .args(args)
        .output()
        .expect("run dqw")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn build(dir: &Path, name: &str, family: &str, params: &[&str]) -> PathBuf {
    let path = dir.join(name);
    let mut args = vec!["build", "--family", family, "-o", path.to_str().unwrap()];
    if !params.is_empty() {
        args.push("--params");
        args.extend_from_slice(params);
    }
    let out = dqw(&args);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    path
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn build_writes_graph_files() {
    let dir = TempDir::new().unwrap();
    let p = read_json(&build(dir.path(), "p.json", "petersen", &[]));
    assert_eq!(p["n"], 10);
    assert_eq!(p["edges"].as_array().unwrap().len(), 15);
    let q = read_json(&build(dir.path(), "q3.json", "hypercube", &["3"]));
    assert_eq!(q["n"], 8);
    assert_eq!(q["edges"].as_array().unwrap().len(), 12);
}

#[test]
fn build_rejects_bad_input() {
    assert_eq!(code(&dqw(&["build", "--family", "complete", "--params", "1"])), 2);
    assert_eq!(code(&dqw(&["build", "--family", "moebius"])), 2);
    assert_eq!(code(&dqw(&["build", "--family", "cycle", "--params", "2"])), 2);
}

#[test]
fn build_accepts_quoted_param_list() {
    let out = dqw(&["build", "--family", "complete_bipartite", "--params", "3 3"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let g: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(g["n"], 6);
}

#[test]
fn analyze_petersen() {
    let dir = TempDir::new().unwrap();
    let p = build(dir.path(), "p.json", "petersen", &[]);
    let out = dqw(&["analyze", p.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["drg"]["drg"], true);
    assert_eq!(r["drg"]["intersection_array"]["b"], serde_json::json!([3, 2]));
    assert_eq!(r["drg"]["intersection_array"]["c"], serde_json::json!([1, 1]));
    assert!(r.get("factorization").is_none());
    assert!(r["checks"].as_object().unwrap().values().all(|v| v == true));
}

#[test]
fn analyze_prism_marks_skipped_checks() {
    let dir = TempDir::new().unwrap();
    let p = build(dir.path(), "prism.json", "prism", &[]);
    let out = dqw(&["analyze", p.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["drg"]["drg"], false);
    assert!(r["drg"]["witness"].is_object());
    assert_eq!(r["checks"]["skew_adjacencies_commute"], "skipped");
}

#[test]
fn analyze_rejects_truncated_json() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\"n\": 4, \"edges\": [[0,1],").unwrap();
    assert_eq!(code(&dqw(&["analyze", path.to_str().unwrap()])), 2);
    assert_eq!(code(&dqw(&["analyze", dir.path().join("missing.json").to_str().unwrap()])), 2);
}

#[test]
fn factorize_complete_graph_has_one_coefficient() {
    let dir = TempDir::new().unwrap();
    let k5 = build(dir.path(), "k5.json", "complete", &["5"]);
    let report = dir.path().join("r.json");
    let out = dqw(&["factorize", k5.to_str().unwrap(), "--report", report.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let r = read_json(&report);
    assert_eq!(r["factorization"]["coefficients"].as_array().unwrap().len(), 1);
    assert!(r["factorization"]["product_error"].as_f64().unwrap() < 1e-8);
    assert_eq!(r["invertible"], true);
}

#[test]
fn factorize_refuses_unmet_hypotheses() {
    let dir = TempDir::new().unwrap();
    for (name, family, params) in [("c4", "cycle", &["4"][..]), ("k33", "complete_bipartite", &["3"][..])] {
        let g = build(dir.path(), name, family, params);
        let out = dqw(&["factorize", g.to_str().unwrap()]);
        assert_eq!(code(&out), 2);
        assert!(stderr(&out).contains("adjacency matrix singular"), "{}", stderr(&out));
    }
    let prism = build(dir.path(), "prism", "prism", &[]);
    let out = dqw(&["factorize", prism.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("not distance-regular"));
}

#[test]
fn factorize_strict_tolerance_exits_three() {
    let dir = TempDir::new().unwrap();
    let p = build(dir.path(), "p.json", "petersen", &[]);
    let report = dir.path().join("r.json");
    let out = dqw(&["factorize", p.to_str().unwrap(), "--tol", "1e-15", "--report", report.to_str().unwrap()]);
    assert_eq!(code(&out), 3);
    let r = read_json(&report);
    assert_eq!(r["checks"]["product_within_tolerance"], false);
}

#[test]
fn factorize_reports_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let p = build(dir.path(), "p.json", "petersen", &[]);
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for r in [&a, &b] {
        assert_eq!(code(&dqw(&["factorize", p.to_str().unwrap(), "--report", r.to_str().unwrap()])), 0);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn simulate_petersen_prints_five_lines() {
    let dir = TempDir::new().unwrap();
    let p = build(dir.path(), "p.json", "petersen", &[]);
    let out = dqw(&["simulate", p.to_str().unwrap(), "--steps", "10"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 5);
    for line in text.lines() {
        let dev: f64 = line.rsplit(' ').next().unwrap().parse().unwrap();
        assert!(dev < 1e-7);
    }
}

#[test]
fn simulate_edge_cases() {
    let dir = TempDir::new().unwrap();
    let q3 = build(dir.path(), "q3.json", "hypercube", &["3"]);
    let q3 = q3.to_str().unwrap();
    let out = dqw(&["simulate", q3, "--steps", "0"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.trim(), "m = 0: deviation = 0.000e0");

    assert_eq!(code(&dqw(&["simulate", q3, "--start-arc", "24"])), 2);
    assert_eq!(code(&dqw(&["simulate", q3, "--start-arc", "0,7"])), 2);
    assert_eq!(code(&dqw(&["simulate", q3, "--start-arc", "0,1", "--steps", "4"])), 0);
    assert_eq!(code(&dqw(&["simulate", q3, "--steps", "3"])), 2);

    let c4 = build(dir.path(), "c4.json", "cycle", &["4"]);
    assert_eq!(code(&dqw(&["simulate", c4.to_str().unwrap()])), 2);
}
