//! End-to-end runs of the `graphjac` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn graphjac(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_graphjac")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = graphjac(&full);
    let value = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{args:?} printed invalid JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)));
    (value, out.status.code().expect("exit code"))
}

fn stdout(args: &[&str]) -> String {
    let out = graphjac(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

struct Files {
    _dir: TempDir,
    c3: PathBuf,
    k4: PathBuf,
    tree: PathBuf,
    broken: PathBuf,
    split: PathBuf,
}

fn files() -> Files {
    let dir = TempDir::new().unwrap();
    let c3 = write(&dir, "c3.txt", "3 3\n0 1\n1 2\n2 0\n");
    let k4 = write(&dir, "k4.txt", "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    let tree = write(&dir, "tree.txt", "4 3\n0 1\n1 2\n1 3\n");
    let broken = write(&dir, "broken.txt", "3 2\n0 1\n1 x\n");
    let split = write(&dir, "split.txt", "4 2\n0 1\n2 3\n");
    Files {
        _dir: dir,
        c3,
        k4,
        tree,
        broken,
        split,
    }
}

#[test]
fn info_reports_group() {
    let f = files();
    let (v, code) = json(&["info", "--graph", s(&f.c3)]);
    assert_eq!(code, 0);
    assert_eq!(v["kappa"], 3);
    assert_eq!(v["n"], 3);
    assert_eq!(v["m"], 3);
    assert_eq!(v["cyclic"], true);
    let (v, _) = json(&["info", "--graph", s(&f.tree)]);
    assert_eq!(v["kappa"], 1);
    let (v, _) = json(&["info", "--graph", s(&f.k4)]);
    assert_eq!(v["invariant_factors"], serde_json::json!([4, 4]));
    assert_eq!(v["cyclic"], false);
}

#[test]
fn input_errors_have_distinct_exit_codes() {
    let f = files();
    let (v, code) = json(&["info", "--graph", s(&f.broken)]);
    assert_eq!(code, 2);
    assert_eq!(v["error"], "parse");
    let (v, code) = json(&["info", "--graph", s(&f.split)]);
    assert_eq!(code, 3);
    assert_eq!(v["error"], "invalid-graph");
    let (_, code) = json(&["pairing", "--graph", s(&f.c3), "--d1", "1,0,0", "--d2", "1,-1,0"]);
    assert_eq!(code, 4);
    let text = graphjac(&["pairing", "--graph", s(&f.c3), "--d1", "1,0,0", "--d2", "1,-1,0"]);
    assert!(String::from_utf8_lossy(&text.stderr).contains("degree"));
}

#[test]
fn structure_lists_generators() {
    let f = files();
    let (v, code) = json(&["structure", "--graph", s(&f.k4)]);
    assert_eq!(code, 0);
    assert_eq!(v["order"], 16);
    assert_eq!(v["generators"].as_array().unwrap().len(), 2);
}

#[test]
fn pairing_values() {
    let f = files();
    let c3 = s(&f.c3);
    assert_eq!(stdout(&["pairing", "--graph", c3, "--d1", "1,-1,0", "--d2", "1,-1,0"]), "2/3\n");
    assert_eq!(stdout(&["pairing", "--graph", c3, "--d1", "1,-1,0", "--d2", "0,0,0"]), "0/1\n");
    assert_eq!(
        stdout(&["pairing", "--graph", c3, "--d1", "1,-1,0", "--d2", "1,-1,0", "--inverse", "mp"]),
        "2/3\n"
    );
    let all = stdout(&["pairing", "--graph", c3, "--d1", "1,-1,0", "--d2", "2,-2,0", "--all-inverses"]);
    let lines: Vec<&str> = all.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines.iter().all(|l| l.ends_with(" 1/3")), "{all}");
    let (v, _) = json(&["pairing", "--graph", c3, "--d1", "1,-1,0", "--d2", "2,-2,0", "--all-inverses"]);
    assert_eq!(v["agree"], true);
}

#[test]
fn dlp_examples() {
    let f = files();
    let c3 = s(&f.c3);
    let (v, code) = json(&["dlp", "--graph", c3, "--base", "1,-1,0", "--target", "2,-2,0", "--oracle"]);
    assert_eq!(code, 0);
    assert_eq!((v["x"].clone(), v["mod"].clone()), (2.into(), 3.into()));
    assert_eq!(v["verified"], true);
    assert_eq!(v["oracle"]["agrees"], true);
    let (v, _) = json(&["dlp", "--graph", c3, "--base", "1,-1,0", "--target", "1,-1,0"]);
    assert_eq!(v["x"], 1);
    let (v, code) = json(&["dlp", "--graph", s(&f.k4), "--base", "1,-1,0,0", "--target", "1,0,-1,0"]);
    assert_eq!(code, 5);
    assert_eq!(v["error"], "no-solution");
    let (v, code) = json(&["dlp", "--graph", s(&f.k4), "--base", "1,-1,0,0", "--target", "3,-3,0,0", "--oracle"]);
    assert_eq!(code, 0);
    assert_eq!(v["method"], "general");
    assert_eq!(v["oracle"]["agrees"], true);
}

#[test]
fn reduce_command() {
    let f = files();
    assert_eq!(stdout(&["reduce", "--graph", s(&f.c3), "--divisor", "3,-3,0"]), "0,0,0\n");
    let (v, _) = json(&["reduce", "--graph", s(&f.c3), "--divisor", "1,-1,0", "--q", "0"]);
    assert_eq!(v["reduced"], "-1,0,1");
}

#[test]
fn gen_instance_is_deterministic_and_parses_back() {
    let dir = TempDir::new().unwrap();
    let a = stdout(&["gen-instance", "--family", "banana", "--size", "7", "--seed", "9"]);
    let b = stdout(&["gen-instance", "--family", "banana", "--size", "7", "--seed", "9"]);
    assert_eq!(a, b);
    let path = write(&dir, "b7.txt", &a);
    let (v, _) = json(&["info", "--graph", s(&path)]);
    assert_eq!(v["invariant_factors"], serde_json::json!([7]));
    let (v, _) = json(&["gen-instance", "--family", "cycle", "--size", "5", "--seed", "3"]);
    assert_eq!(v["kappa"], 5);
    let (_, code) = json(&["gen-instance", "--family", "cycle", "--size", "0"]);
    assert_eq!(code, 4);
}

#[test]
fn round_trip_recovers_secret() {
    let dir = TempDir::new().unwrap();
    let graph = dir.path().join("g.txt");
    for family in ["cycle", "complete", "banana", "wheel", "random"] {
        for seed in 0..100u64 {
            let size = match family {
                "complete" => 3 + seed % 3,
                "wheel" => 3 + seed % 6,
                _ => 3 + seed % 12,
            };
            let (inst, code) = json(&[
                "gen-instance",
                "--family",
                family,
                "--size",
                &size.to_string(),
                "--seed",
                &seed.to_string(),
                "--out",
                s(&graph),
            ]);
            assert_eq!(code, 0);
            let (sol, code) = json(&[
                "dlp",
                "--graph",
                s(&graph),
                "--base",
                inst["base"].as_str().unwrap(),
                "--target",
                inst["target"].as_str().unwrap(),
            ]);
            assert_eq!(code, 0, "{family} {size} {seed}: {sol}");
            let secret: u64 = inst["secret"].as_u64().unwrap();
            let modulus: u64 = sol["mod"].as_u64().unwrap();
            assert_eq!(sol["x"].as_u64().unwrap(), secret % modulus, "{family} {size} {seed}");
            assert_eq!(sol["verified"], true);
        }
    }
}

#[test]
fn self_check_small_plan() {
    let (v, _) = json(&["self-check", "--pairs", "5", "--instances", "3", "--lift-trials", "5"]);
    let criteria = v["criteria"].as_array().unwrap();
    assert_eq!(criteria.len(), 9);
    for c in criteria {
        if c["criterion"] != 7 {
            assert_eq!(c["passed"], true, "{c}");
        }
    }
}

#[test]
fn bench_reports_points() {
    let (v, code) = json(&["bench", "--sizes", "20,40", "--instances", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["points"].as_array().unwrap().len(), 2);
    assert!(v["criterion"]["passed"].is_boolean());
}
