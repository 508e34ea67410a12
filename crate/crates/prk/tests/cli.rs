use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use prk::format::{CertificateDoc, GraphDoc};
use serde_json::Value;
use tempfile::TempDir;

const GAIN_TRIANGLE: &str = r#"{"model": "fixed", "n": 3, "edges": [
    {"u": 0, "v": 1, "gain": [1, 2]}, {"u": 1, "v": 2, "gain": [0, 1]},
    {"u": 0, "v": 2, "gain": [3, 1]}, {"u": 2, "v": 0, "gain": [1, -1]}]}"#;

const STRIP: &str = r#"{"model": "cylinder", "n": 5, "edges": [
    {"u": 0, "v": 1, "gain": [0]}, {"u": 1, "v": 2, "gain": [0]}, {"u": 2, "v": 0, "gain": [0]},
    {"u": 1, "v": 4, "gain": [0]}, {"u": 4, "v": 3, "gain": [0]}, {"u": 3, "v": 2, "gain": [0]},
    {"u": 1, "v": 4, "gain": [1]}, {"u": 3, "v": 1, "gain": [1]}, {"u": 3, "v": 0, "gain": [1]}]}"#;

fn loop_doc(x: i128, y: i128) -> String {
    format!(r#"{{"model": "x-variable", "n": 1, "edges": [{{"u": 0, "v": 0, "gain": [{x}, {y}]}}]}}"#)
}

fn prk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prk")).args(args).env_remove("PRK_BRUTE_FORCE_BOUND").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn file(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn check_exit_codes() {
    let dir = TempDir::new().unwrap();
    let rigid = prk(&["check", s(&file(&dir, "a.json", &loop_doc(1, 0)))]);
    assert_eq!(rigid.status.code(), Some(0));
    assert!(stdout(&rigid).contains("rigid"));

    let flex = prk(&["check", s(&file(&dir, "b.json", &loop_doc(0, 1)))]);
    assert_eq!(flex.status.code(), Some(1));
    assert!(stdout(&flex).contains("not x-constructive"));

    let bad = prk(&["check", s(&file(&dir, "c.json", "{\"model\": \"x-variable\", \"n\": "))]);
    assert_eq!(bad.status.code(), Some(2));
    assert_eq!(prk(&["check", "/nonexistent/graph.json"]).status.code(), Some(2));
}

#[test]
fn check_json_and_oracle() {
    let dir = TempDir::new().unwrap();
    let p = file(&dir, "gain_triangle.json", GAIN_TRIANGLE);
    let out = prk(&["check", s(&p), "--json", "--oracle", "--model", "x-variable"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["model"], "x-variable");
    assert_eq!(v["oracle"]["agrees"], true);
    assert!(String::from_utf8_lossy(&out.stderr).contains("overrides"));
    // four edges on three vertices is one short for x-variable
    assert_eq!(v["verdict"], "count-mismatch");
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn generate_is_deterministic() {
    let a = prk(&["generate", "-n", "5", "--seed", "7"]);
    let b = prk(&["generate", "-n", "5", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let doc = GraphDoc::parse(&stdout(&a)).unwrap();
    assert_eq!((doc.n, doc.edges.len()), (5, 9));
    assert_ne!(prk(&["generate", "-n", "5", "--seed", "8"]).stdout, a.stdout);
}

#[test]
fn generated_graphs_check_and_reduce() {
    let dir = TempDir::new().unwrap();
    for model in ["x-variable", "y-variable", "cylinder"] {
        let g = dir.path().join(format!("{model}.json"));
        let c = dir.path().join(format!("{model}.cert.json"));
        let out = prk(&["generate", "-n", "6", "--seed", "3", "--model", model, "--out", s(&g), "--cert", s(&c)]);
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(prk(&["check", s(&g)]).status.code(), Some(0));
        let red = prk(&["reduce", s(&g), "--json"]);
        assert_eq!(red.status.code(), Some(0));
        let cert = CertificateDoc::parse(&stdout(&red)).unwrap();
        assert_eq!(cert.moves.len(), 5);
        CertificateDoc::parse(&std::fs::read_to_string(&c).unwrap()).unwrap().certificate().unwrap();
    }
    let flex = file(&dir, "f.json", &loop_doc(0, 1));
    let out = prk(&["reduce", s(&flex), "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["witness"]["kind"], "gain");
    let fixed = file(&dir, "fixed.json", GAIN_TRIANGLE);
    assert_eq!(prk(&["reduce", s(&fixed)]).status.code(), Some(2));
}

#[test]
fn json_round_trip() {
    let out = prk(&["generate", "-n", "4", "--seed", "11", "--json"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let graph: GraphDoc = serde_json::from_value(v["graph"].clone()).unwrap();
    let cert: CertificateDoc = serde_json::from_value(v["certificate"].clone()).unwrap();
    assert_eq!(GraphDoc::parse(&graph.to_json()).unwrap(), graph);
    assert_eq!(CertificateDoc::parse(&cert.to_json()).unwrap(), cert);
}

#[test]
fn rank_of_a_loop() {
    let dir = TempDir::new().unwrap();
    let p = file(&dir, "l.json", &loop_doc(1, 0));
    let out = prk(&["rank", s(&p)]);
    assert_eq!(stdout(&out).trim(), "1");
    let v: Value = serde_json::from_slice(&prk(&["rank", s(&p), "--json"]).stdout).unwrap();
    assert_eq!((v["rank"].as_u64(), v["full_rank"].as_u64()), (Some(1), Some(1)));
}

#[test]
fn tgain_table() {
    let dir = TempDir::new().unwrap();
    let p = file(&dir, "gain_triangle.json", GAIN_TRIANGLE);
    let out = prk(&["tgain", s(&p), "--tree", "0,3", "--root", "2", "--json"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["potentials"], serde_json::json!([[1, -1], [2, 1], [0, 0]]));
    assert_eq!(v["t_gains"], serde_json::json!([[0, 0], [2, 2], [4, 0], [0, 0]]));
    let text = stdout(&prk(&["tgain", s(&p)]));
    assert!(text.contains("potentials") && text.contains("t-gains"));
    assert_eq!(prk(&["tgain", s(&p), "--tree", "0"]).status.code(), Some(2));
}

#[test]
fn decompose_tree_and_map() {
    let dir = TempDir::new().unwrap();
    let p = file(&dir, "g.json", &stdout(&prk(&["generate", "-n", "5", "--seed", "2"])));
    let v: Value = serde_json::from_slice(&prk(&["decompose", s(&p), "--json"]).stdout).unwrap();
    assert_eq!(v["tree_edges"].as_array().unwrap().len(), 4);
    assert_eq!(v["map_edges"].as_array().unwrap().len(), 5);
    let gain_triangle = file(&dir, "gain_triangle.json", GAIN_TRIANGLE);
    assert_eq!(prk(&["decompose", s(&gain_triangle)]).status.code(), Some(1));
}

#[test]
fn svg_export() {
    let dir = TempDir::new().unwrap();
    let l = file(&dir, "l.json", &loop_doc(1, 0));
    let svg = stdout(&prk(&["export-svg", s(&l), "--window", "3x1"]));
    assert_eq!(svg.matches("<circle").count(), 3);
    assert_eq!(svg.matches("<line").count(), 2);
    let one = stdout(&prk(&["export-svg", s(&l), "--window", "1x1"]));
    assert_eq!(one.matches("<line").count(), 0);

    let strip = file(&dir, "strip.json", STRIP);
    let out = dir.path().join("strip.svg");
    assert_eq!(prk(&["export-svg", s(&strip), "--window", "3x1", "--out", s(&out)]).status.code(), Some(0));
    let drawn = std::fs::read_to_string(&out).unwrap();
    assert_eq!(drawn.matches("<circle").count(), 15);

    assert_eq!(prk(&["export-svg", s(&l), "--window", "3by1"]).status.code(), Some(2));
    let placed = r#"{"model": "x-variable", "n": 1, "edges": [{"u": 0, "v": 0, "gain": [1, 0]}],
        "placement": {"positions": [[0.5, 0.5], [0.1, 0.1]], "lattice": [[1, 0], [0, 1]]}}"#;
    assert_eq!(prk(&["export-svg", s(&file(&dir, "p.json", placed))]).status.code(), Some(2));
}

#[test]
fn batch_isolates_files() {
    let dir = TempDir::new().unwrap();
    file(&dir, "a.json", &loop_doc(1, 0));
    file(&dir, "b.json", "not json");
    file(&dir, "c.json", &loop_doc(0, 1));
    file(&dir, "notes.txt", "ignored");
    let out = prk(&["check", "--batch", s(dir.path()), "--json"]);
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let codes: Vec<u64> = v.as_array().unwrap().iter().map(|r| r["exit_code"].as_u64().unwrap()).collect();
    assert_eq!(codes, [0, 2, 1]);
    assert_eq!(v[0]["report"]["verdict"], "rigid");
}

#[test]
fn brute_force_bound_from_env() {
    let dir = TempDir::new().unwrap();
    let p = file(&dir, "l.json", &loop_doc(1, 0));
    let run = |bound: &str| {
        Command::new(env!("CARGO_BIN_EXE_prk")).args(["check", s(&p)]).env("PRK_BRUTE_FORCE_BOUND", bound).output().unwrap()
    };
    assert_eq!(run("4").status.code(), Some(0));
    assert_eq!(run("four").status.code(), Some(2));
}
