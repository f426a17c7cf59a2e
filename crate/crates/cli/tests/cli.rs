use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gpa-lab"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(dir: &Path, args: &[&str]) -> String {
    let out = run(dir, args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn generate_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let args = |out: &'static str| {
        vec!["generate", "--m", "2", "--A", "0.5", "--D", "0.3", "--n", "20000", "--seed", "1", "--out-dir", out]
    };
    let stdout = ok(dir.path(), &args("a"));
    assert!(stdout.contains("edges=40000"));
    ok(dir.path(), &args("b"));
    let a = fs::read(dir.path().join("a/graph.edges")).unwrap();
    assert_eq!(a, fs::read(dir.path().join("b/graph.edges")).unwrap());
    assert_eq!(a.iter().filter(|&&c| c == b'\n').count(), 40_000);
    assert_eq!(
        fs::read(dir.path().join("a/graph.json")).unwrap(),
        fs::read(dir.path().join("b/graph.json")).unwrap()
    );
}

#[test]
fn sidecar_reproduces_graph() {
    let dir = tempfile::tempdir().unwrap();
    ok(dir.path(), &["generate", "--A", "0.3", "--n", "3000", "--seed", "5", "--format", "binary", "--out-dir", "a"]);
    ok(dir.path(), &["generate", "--config", "a/graph.json", "--out-dir", "b"]);
    assert_eq!(
        fs::read(dir.path().join("a/graph.gpag")).unwrap(),
        fs::read(dir.path().join("b/graph.gpag")).unwrap()
    );
    let meta = json(&dir.path().join("b/graph.json"));
    assert_eq!(meta["config"]["seed"], 5);
    assert_eq!(meta["format"], "binary");
}

#[test]
fn infeasible_parameters_exit_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["generate", "--A", "0.9", "--D", "0.3", "--m", "2", "--n", "100"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("infeasible"));
}

#[test]
fn unknown_config_key_rejected() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("c.json"), r#"{"A": 0.5, "bogus": 1}"#).unwrap();
    let out = run(dir.path(), &["theory", "--config", "c.json"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("bogus"));
}

#[test]
fn analyze_small_graphs() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("k4.txt"), "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n").unwrap();
    ok(dir.path(), &["analyze", "k4.txt", "--min-count", "1", "--out-dir", "k4"]);
    let s = json(&dir.path().join("k4/summary.json"));
    assert_eq!(s["C1"], 1.0);
    assert_eq!(s["C2"], 1.0);
    let csv = fs::read_to_string(dir.path().join("k4/stats.csv")).unwrap();
    assert_eq!(csv, "d,N_d,T_d,C_of_d,C_theory_d,S_d\n3,4,12,1,,36\n");

    fs::write(dir.path().join("p3.txt"), "0 1\n1 2\n").unwrap();
    ok(dir.path(), &["analyze", "p3.txt", "--out-dir", "p3"]);
    let s = json(&dir.path().join("p3/summary.json"));
    assert_eq!(s["C1"], 0.0);
    assert_eq!(s["C2"], 0.0);
    assert_eq!(s["excluded_vertices"], 2);
}

#[test]
fn analyze_reports_line_of_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("bad.txt"), "0 1\n\n2 q\n").unwrap();
    let out = run(dir.path(), &["analyze", "bad.txt"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn analyze_generated_graph_joins_theory() {
    let dir = tempfile::tempdir().unwrap();
    ok(dir.path(), &["generate", "--n", "100000", "--out-dir", "g"]);
    ok(dir.path(), &["analyze", "g/graph.edges", "--out-dir", "g"]);
    let csv = fs::read_to_string(dir.path().join("g/stats.csv")).unwrap();
    let row2: Vec<&str> = csv.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row2[0], "2");
    assert_eq!(row2[4], "0.3");
    let c2: f64 = row2[3].parse().unwrap();
    assert!((c2 - 0.3).abs() < 0.045, "C(2) = {c2}");
    let s = json(&dir.path().join("g/summary.json"));
    assert_eq!(s["m"], 2);
    assert!(s["multi_edges_removed"].as_f64().unwrap() / 200_000.0 < 0.01);
}

#[test]
fn theory_outputs() {
    let dir = tempfile::tempdir().unwrap();
    ok(dir.path(), &["theory", "--m", "2", "--A", "0.5", "--D", "0.3", "--d-max", "10", "--out-dir", "t"]);
    let csv = fs::read_to_string(dir.path().join("t/theory.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "d,c_md,K_d,C_theory_d,f_d");
    for line in lines {
        let f: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
        assert!((f[3] - 0.6 / f[0]).abs() < 1e-12, "{line}");
    }
    let t = json(&dir.path().join("t/theory.json"));
    assert_eq!(t["clustering_law_proven"], true);
    assert!((t["series"]["sum"].as_f64().unwrap() - 0.22176).abs() < 1e-5);

    ok(dir.path(), &["theory", "--A", "0.15", "--D", "0.3", "--out-dir", "u"]);
    assert_eq!(json(&dir.path().join("u/theory.json"))["params"]["shift_a"], "inf");
    ok(dir.path(), &["theory", "--A", "0.8", "--out-dir", "h"]);
    assert_eq!(json(&dir.path().join("h/theory.json"))["clustering_law_proven"], false);
}

#[test]
fn sweep_rows_and_warnings() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        dir.path(),
        &["sweep", "--param", "A", "--values", "0.5,0.9", "--n", "3000", "--replicates", "2", "--threads", "2"],
    );
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
    let csv = fs::read_to_string(dir.path().join("sweep.csv")).unwrap();
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(rows.len(), 3);
    assert!(rows[1].starts_with("A,0.5,0.5,0.3,ok,2,"));
    assert!(rows[2].contains("infeasible"));
}

#[test]
fn validate_modes() {
    let dir = tempfile::tempdir().unwrap();
    ok(dir.path(), &["validate", "--mode", "transitions", "--trials", "100000", "--out-dir", "v"]);
    let v = json(&dir.path().join("v/validation.json"));
    assert_eq!(v["passed"], true);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["value"].as_f64().unwrap().abs() < 3.0
        || c["name"] == "edge_ends"));

    // An impossible threshold makes the check fail and the exit code nonzero.
    let out = run(
        dir.path(),
        &["validate", "--mode", "wn", "--A", "0.7", "--seeds", "2", "--n-grid", "1000,40000", "--slope-tol", "0"],
    );
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&dir.path().join("validation.json"))["passed"], false);
}
