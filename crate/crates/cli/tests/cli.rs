use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_highconn"));
    for var in ["HIGHCONN_BUDGET_NODES", "HIGHCONN_BUDGET_TEMPLATES", "HIGHCONN_BUDGET_SUBSETS"] {
        c.env_remove(var);
    }
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn without_timings(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timings");
    v
}

#[test]
fn demo_star_report_file() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("report.json");
    let o = run(&["demo-star", "--k", "2", "--out", s(&out)]);
    assert_eq!(o.status.code(), Some(0));
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(r["results"]["cost"], 7);
    assert_eq!(r["results"]["verdict"], "UNSAT");
    assert_eq!(r["schema_version"], 1);
    assert!(r["assertions"].as_array().unwrap().iter().all(|a| a["passed"] == true));
}

#[test]
fn verify_theorem_exhaustive_small() {
    let o = run(&["verify-theorem", "--k", "1", "--nmax", "7", "--exhaustive"]);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    assert_eq!(r["results"]["graphs"], 1252);
    assert_eq!(r["results"]["failures"].as_array().unwrap().len(), 0);
}

#[test]
fn extend_c5_example() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "c5.g6", "Dhc\n");
    let t = write(&dir, "t.json", r#"{"S": [0], "c": [1], "F": {"1": [2]}}"#);
    for variant in ["316k", "4k"] {
        let o = run(&["extend", "--variant", variant, "--graph", s(&g), "--template", s(&t), "--colors", "6", "--k", "2"]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        let r = json(&o);
        let f: Vec<u64> = serde_json::from_value(r["results"]["coloring"].clone()).unwrap();
        assert_eq!(f.len(), 5);
        assert_eq!(f[0], 1);
        assert_ne!(f[1], 2);
        for i in 0..5 {
            assert_ne!(f[i], f[(i + 1) % 5]);
        }
    }
}

#[test]
fn extend_with_trace_and_partition() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "c5.txt", "5 5\n0 1\n1 2\n2 3\n3 4\n4 0\n");
    let p = write(&dir, "p.json", "[[0, 2], [1, 3], [4]]");
    let o = run(&["extend", "--variant", "316k", "--graph", s(&g), "--partition", s(&p), "--colors", "6", "--k", "2", "--trace"]);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    assert!(r["results"]["trace"]["stages"].as_array().unwrap().len() >= 5);
    assert_eq!(r["results"]["partition"], serde_json::json!([[0, 2], [1, 3], [4]]));
}

#[test]
fn input_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "k3.txt", "3 3\n0 1\n1 2\n0 2\n");
    let bad = write(&dir, "bad.json", r#"{"S": [0, 2], "c": [1, 1]}"#);
    let o = run(&["extend", "--variant", "4k", "--graph", s(&g), "--template", s(&bad), "--colors", "6", "--k", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("0 and 2"), "{err}");

    let o = run(&["demo-star", "--k", "2", "--unknown-flag"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));

    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(&["demo-h", "--k", "3", "--colors", "4"]).status.code(), Some(2));
    let missing = dir.path().join("missing.g6");
    assert_eq!(run(&["extract", "--graph", s(&missing), "--k", "1"]).status.code(), Some(2));
    // hypothesis of the extraction fails for C5 with k = 1
    let c5 = write(&dir, "c5.g6", "Dhc\n");
    assert_eq!(run(&["extract", "--graph", s(&c5), "--k", "1"]).status.code(), Some(2));
}

#[test]
fn budget_exhaustion_exits_three() {
    let o = bin()
        .args(["verify-theorem", "--k", "1", "--nmax", "5", "--exhaustive"])
        .env("HIGHCONN_BUDGET_NODES", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    let o = run(&["search-g", "--k", "1", "--m", "4", "--nmax", "6", "--budget-subsets", "1"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn flag_overrides_environment() {
    let o = bin()
        .args(["demo-star", "--k", "1", "--budget-nodes", "1000"])
        .env("HIGHCONN_BUDGET_NODES", "5")
        .output()
        .unwrap();
    assert_eq!(json(&o)["parameters"]["budget"]["solver_nodes"], 1000);
}

#[test]
fn reports_are_deterministic() {
    let args = ["verify-theorem", "--k", "1", "--nmax", "8", "--samples", "40", "--seed", "11"];
    let a = without_timings(json(&run(&args)));
    let b = without_timings(json(&run(&args)));
    assert_eq!(a, b);
    let c = without_timings(json(&run(&["verify-theorem", "--k", "1", "--nmax", "8", "--samples", "40", "--seed", "12"])));
    assert_ne!(a["results"], c["results"]);
}

#[test]
fn extract_and_minimalize_wheel() {
    let dir = TempDir::new().unwrap();
    let w5 = write(&dir, "w5.txt", "6 10\n0 1\n0 2\n0 3\n0 4\n0 5\n1 2\n2 3\n3 4\n4 5\n5 1\n");
    let o = run(&["extract", "--graph", s(&w5), "--k", "1", "--mode", "exact"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["results"]["report"]["vertices"], serde_json::json!([0, 1, 2, 3, 4, 5]));

    // pendant vertex on K4 is dropped
    let g = write(&dir, "k4p.txt", "5 7\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n3 4\n");
    let o = run(&["minimalize", "--graph", s(&g), "--colors", "3", "--k", "1", "--mode", "exact"]);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    assert_eq!(r["results"]["vertices"], serde_json::json!([0, 1, 2, 3]));
    assert_eq!(r["results"]["certified_minimal"], true);
}

#[test]
fn demo_h_and_search_g_csv() {
    let o = run(&["demo-h", "--k", "2", "--colors", "5", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("chromatic_number,"));
    assert!(text.lines().nth(1).unwrap().starts_with("4,5,6,"));

    let o = run(&["search-g", "--k", "1", "--m", "3", "--nmax", "6", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 7);
    assert!(rows[2].contains("lower-bound-witness"));
    assert!(rows[3].contains("upper-bound-consistent"));
}

#[test]
fn catalog_counts_and_ingestion() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("cat.csv");
    let o = run(&["catalog", "--nmax", "5", "--format", "csv", "--out", s(&out)]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    let g6: String = text.lines().skip(1).map(|l| l.split(',').next().unwrap().to_string() + "\n").collect();
    assert_eq!(g6.lines().count(), 1 + 2 + 4 + 11 + 34);
    let r = json(&run(&["catalog", "--nmax", "5", "--connected"]));
    assert_eq!(r["results"]["counts"], serde_json::json!([1, 1, 2, 6, 21]));

    let file = write(&dir, "cat.g6", &g6);
    let o = run(&["verify-theorem", "--k", "1", "--catalog", s(&file)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["results"]["graphs"], 52);
}
