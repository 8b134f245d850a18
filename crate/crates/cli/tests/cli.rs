use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;
use tempfile::TempDir;

const K3: &str = "p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n";
const K4: &str = "p edge 4 6\ne 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4\ne 3 4\n";
const P3: &str = "c path on three vertices\np edge 3 2\ne 1 2\ne 2 3\n";
const EDGE: &str = "p edge 2 1\ne 1 2\n";
const EMPTY5: &str = "p edge 5 0\n";

struct Run {
    code: i32,
    report: Value,
    stdout: String,
    stderr: String,
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

fn modk(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_modk"))
        .args(args)
        .env_remove("MODK_THREADS")
        .output()
        .expect("binary runs");
    let stdout = String::from_utf8(out.stdout).unwrap();
    let report = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    Run {
        code: out.status.code().expect("exited"),
        report,
        stdout,
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn decide_no_on_k4() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "k4.col", K4);
    let r = modk(&["decide", "--graph", s(&g), "--k", "3", "--s", "1"]);
    assert_eq!(r.code, 1, "{}", r.stderr);
    assert_eq!(r.report["result"]["verdict"], "no");
    assert_eq!(r.report["result"]["trials_run"], 2);
    assert_eq!(r.report["trials"].as_array().unwrap().len(), 2);
}

#[test]
fn decide_yes_on_triangle() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "k3.col", K3);
    let r = modk(&["decide", "--graph", s(&g), "--k", "3", "--s", "6", "--seed", "3"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.report["result"]["verdict"], "yes");
    let last = r.report["trials"].as_array().unwrap().last().unwrap().clone();
    assert_ne!(last["kappa"], "0");
}

#[test]
fn zero_promise_is_an_input_error() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "k3.col", K3);
    let r = modk(&["decide", "--graph", s(&g), "--k", "3", "--s", "0"]);
    assert_eq!(r.code, 2);
    assert!(r.stdout.is_empty());
    assert!(r.stderr.contains("error"));
}

#[test]
fn malformed_inputs_exit_2() {
    let dir = TempDir::new().unwrap();
    let loop_graph = write(dir.path(), "loop.col", "p edge 2 1\ne 1 1\n");
    let headerless = write(dir.path(), "bare.col", "e 1 2\n");
    let g = write(dir.path(), "k3.col", K3);
    let bad_pd = write(dir.path(), "bad.pd", "pd 2 3\nb 1 1 2\nb 2 3\n");
    for args in [
        vec!["decide", "--graph", s(&loop_graph), "--k", "3", "--s", "1"],
        vec!["decide", "--graph", s(&headerless), "--k", "3", "--s", "1"],
        vec!["decide", "--graph", "/nonexistent.col", "--k", "3", "--s", "1"],
        vec!["decide", "--graph", s(&g), "--pd", s(&bad_pd), "--k", "3", "--s", "1"],
        vec!["color", "--graph", s(&g), "--k", "0", "--s", "1"],
        vec!["kappa", "--graph", s(&g), "--k", "3", "--w", "0,x,0"],
    ] {
        let r = modk(&args);
        assert_eq!(r.code, 2, "{args:?}: {}", r.stderr);
    }
}

#[test]
fn explicit_decomposition_is_used() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "p3.col", P3);
    let pd = write(dir.path(), "p3.pd", "c two bags\npd 2 3\nb 1 1 2\nb 2 2 3\n");
    let r = modk(&["decide", "--graph", s(&g), "--pd", s(&pd), "--k", "2", "--s", "2"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.report["decomposition"]["width"], 1);
    assert!(r.report["decomposition"]["source"].as_str().unwrap().starts_with("file:"));
}

#[test]
fn color_path_with_two_colors() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "p3.col", P3);
    let r = modk(&["color", "--graph", s(&g), "--k", "2", "--s", "2"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let c: Vec<u64> = r.report["result"]["coloring"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_u64().unwrap())
        .collect();
    assert_eq!(c.len(), 3);
    assert!(c[0] != c[1] && c[1] != c[2] && c.iter().all(|&x| x < 2));
    assert_eq!(r.report["result"]["verified"], true);
}

#[test]
fn color_fails_on_k4() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "k4.col", K4);
    let r = modk(&["color", "--graph", s(&g), "--k", "3", "--s", "1"]);
    assert_eq!(r.code, 1);
    assert_eq!(r.report["result"]["status"], "failure");
    assert_eq!(r.report["result"]["coloring"], Value::Null);
}

#[test]
fn color_empty_graph_with_one_class() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "e5.col", EMPTY5);
    let r = modk(&["color", "--graph", s(&g), "--k", "3", "--s", "243"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.report["result"]["coloring"], serde_json::json!([0, 0, 0, 0, 0]));
}

#[test]
fn kappa_values() {
    let dir = TempDir::new().unwrap();
    let edge = write(dir.path(), "edge.col", EDGE);
    let r = modk(&["kappa", "--graph", s(&edge), "--k", "3", "--w", "1,2"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.report["result"]["kappa"], "-1");
    let r = modk(&["kappa", "--graph", s(&edge), "--k", "3", "--w", "0,0"]);
    assert_eq!(r.report["result"]["kappa"], "1");

    let tri = write(dir.path(), "k3.col", K3);
    let cyc = write(dir.path(), "cyc.ori", "c cyclic\na 1 2\na 2 3\na 3 1\n");
    let r = modk(&["kappa", "--graph", s(&tri), "--orientation", s(&cyc), "--k", "3", "--w", "0,0,0"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.report["result"]["kappa"], "0");
    let r = modk(&["kappa", "--graph", s(&tri), "--orientation", s(&cyc), "--k", "3", "--w", "1,2,0"]);
    assert_eq!(r.report["result"]["kappa"], "-1");
}

#[test]
fn kappa_rejects_wrong_length() {
    let dir = TempDir::new().unwrap();
    let edge = write(dir.path(), "edge.col", EDGE);
    let r = modk(&["kappa", "--graph", s(&edge), "--k", "3", "--w", "1"]);
    assert_eq!(r.code, 2);
    let r = modk(&["kappa", "--graph", s(&edge), "--k", "3", "--w", "1,5"]);
    assert_eq!(r.code, 2);
}

#[test]
fn kappa_rejects_orientation_mismatch() {
    let dir = TempDir::new().unwrap();
    let edge = write(dir.path(), "edge.col", EDGE);
    let bad = write(dir.path(), "bad.ori", "a 1 2\na 2 1\n");
    let r = modk(&["kappa", "--graph", s(&edge), "--orientation", s(&bad), "--k", "3", "--w", "0,0"]);
    assert_eq!(r.code, 2);
}

#[test]
fn triangle_counts() {
    let r = modk(&["check", "--suite", "triangles", "--t", "2"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let item = &r.report["result"]["items"][0];
    assert_eq!(item["attainable"], 49);
    assert_eq!(item["nonzero"], 36);
}

#[test]
fn identity_suites_pass() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "k3.col", K3);
    for suite in ["squares", "bounds", "charsum", "lemma6", "lemma78", "eq1"] {
        let r = modk(&["check", "--suite", suite, "--graph", s(&g), "--k", "4"]);
        assert_eq!(r.code, 0, "{suite}: {}", r.stderr);
        assert_eq!(r.report["result"]["pass"], true);
        let items = r.report["result"]["items"].as_array().unwrap();
        assert!(items.iter().any(|i| i["k"] == 4));
    }
}

#[test]
fn oracle_suite_passes() {
    let r = modk(&["check", "--suite", "oracle", "--count", "30", "--seed", "9"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.report["result"]["items"].as_array().unwrap().len(), 30);
}

#[test]
fn guard_violation_is_an_input_error() {
    let r = modk(&["check", "--suite", "triangles", "--t", "2", "--max-charsum", "10"]);
    assert_eq!(r.code, 2, "{}", r.stderr);
    assert!(r.stderr.contains("error"));
}

#[test]
fn bench_grid_beats_color_dp() {
    let r = modk(&["bench", "--family", "grid:3x6", "--k", "5", "--order", "bfs", "--trials", "8"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let res = &r.report["result"];
    assert_eq!(res["kappa_below_baseline"], true);
    let kappa = res["kappa_max_table"].as_u64().unwrap();
    let bound: u64 = res["kappa_table_bound"].as_str().unwrap().parse().unwrap();
    assert!(kappa <= bound);
    assert!(kappa < res["color_dp_max_table"].as_u64().unwrap());
    assert!(r.report["decomposition"]["source"].as_str().unwrap().starts_with("heuristic"));
}

#[test]
fn bench_from_file() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "k3.col", K3);
    let r = modk(&["bench", "--graph", s(&g), "--k", "3"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.report["result"]["coloring_count"], "6");
    assert_eq!(modk(&["bench", "--k", "3"]).code, 2);
    assert_eq!(modk(&["bench", "--family", "wheel:4", "--k", "3"]).code, 2);
}

fn without_timing(mut v: Value) -> String {
    v.as_object_mut().unwrap().remove("timing");
    serde_json::to_string(&v).unwrap()
}

#[test]
fn reports_are_reproducible() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "k3.col", K3);
    let runs: Vec<Vec<&str>> = vec![
        vec!["decide", "--graph", s(&g), "--k", "3", "--s", "6", "--seed", "11"],
        vec!["color", "--graph", s(&g), "--k", "3", "--s", "6", "--seed", "11"],
        vec!["check", "--suite", "oracle", "--count", "10", "--seed", "5"],
        vec!["bench", "--family", "triangles:3", "--k", "3", "--seed", "2"],
    ];
    for args in runs {
        let a = modk(&args);
        let b = modk(&args);
        assert_eq!(without_timing(a.report), without_timing(b.report), "{args:?}");
    }
}

#[test]
fn threads_do_not_change_the_log() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "k4.col", K4);
    let args = ["decide", "--graph", s(&g), "--k", "3", "--s", "5", "--seed", "4"];
    let one = modk(&args);
    let four = Command::new(env!("CARGO_BIN_EXE_modk"))
        .args(args)
        .env("MODK_THREADS", "4")
        .output()
        .unwrap();
    let four: Value = serde_json::from_slice(&four.stdout).unwrap();
    assert_eq!(without_timing(one.report), without_timing(four));
}
