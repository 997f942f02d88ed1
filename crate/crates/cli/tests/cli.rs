use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str, body: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli-fixtures");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn polyflow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyflow"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn a2() -> String {
    fixture(
        "a2.json",
        r#"{"dim": 3, "vectors": [[1,-1,0],[0,1,-1],[1,0,-1]]}"#,
    )
    .display()
    .to_string()
}

fn target(name: &str, t: &str) -> String {
    fixture(name, &format!(r#"{{"target": {t}}}"#))
        .display()
        .to_string()
}

#[test]
fn betti_2_2() {
    let o = polyflow(&["magic", "BETTI", "2", "2", "--oracle"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("betti: 3\n"), "{out}");
    assert!(out.contains("(agrees)"));
}

#[test]
fn transportation_2_2() {
    let m = fixture("m22.json", r#"{"rows": [3, 3], "cols": [3, 3]}"#);
    let o = polyflow(&[
        "magic",
        "count",
        "2",
        "2",
        "--margins",
        m.to_str().unwrap(),
        "--oracle",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("count: 4\n"));
}

#[test]
fn a2_ehrhart() {
    let t = target("t101.json", "[1,0,-1]");
    let o = polyflow(&["ehrhart", "--config", &a2(), "--target", &t, "--oracle"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("ehrhart: t + 1\n"), "{out}");
    assert!(out.contains("oracle: t + 1 (agrees)"));
}

#[test]
fn graph_count_matches_oracle() {
    let g = fixture(
        "k3.json",
        r#"{"vertices": ["a","b","c"], "edges": [["a","b"],["b","c"],["a","c"]]}"#,
    );
    let w = fixture("k3w.json", r#"{"weights": {"a": -2, "b": 0, "c": 2}}"#);
    for backend in ["graph", "generic"] {
        let o = polyflow(&[
            "count",
            "--graph",
            g.to_str().unwrap(),
            "--weights",
            w.to_str().unwrap(),
            "--backend",
            backend,
            "--oracle",
        ]);
        assert_eq!(o.status.code(), Some(0));
        assert!(stdout(&o).starts_with("count: 3\n"));
    }
}

#[test]
fn input_errors_exit_2() {
    let o = polyflow(&["count", "--config", &a2()]);
    assert_eq!(o.status.code(), Some(2));
    let w = fixture("w.json", r#"{"weights": {"0": 1}}"#);
    let o = polyflow(&["count", "--config", &a2(), "--weights", w.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--target"));
    let o = polyflow(&[
        "count",
        "--config",
        "/nonexistent.json",
        "--target",
        "/nonexistent.json",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let bad = fixture("bad.json", r#"{"dim": 2, "vectors": [[1,0],[2,0]]}"#);
    let t = target("t11.json", "[1,1]");
    let o = polyflow(&["count", "--config", bad.to_str().unwrap(), "--target", &t]);
    assert_eq!(o.status.code(), Some(2));
    let o = polyflow(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn unsupported_inputs_exit_3() {
    let t = target("t11.json", "[1,1]");
    let obtuse = fixture(
        "obtuse.json",
        r#"{"dim": 2, "vectors": [[1,0],[0,1],[-1,-1]]}"#,
    );
    let o = polyflow(&[
        "count",
        "--config",
        obtuse.to_str().unwrap(),
        "--target",
        &t,
    ]);
    assert_eq!(o.status.code(), Some(3));
    let skew = fixture("skew.json", r#"{"dim": 2, "vectors": [[1,0],[1,2]]}"#);
    let o = polyflow(&["count", "--config", skew.to_str().unwrap(), "--target", &t]);
    assert_eq!(o.status.code(), Some(3));
    let outside = target("tout.json", "[-1,0,1]");
    let o = polyflow(&["ehrhart", "--config", &a2(), "--target", &outside]);
    assert_eq!(o.status.code(), Some(3));
    let wall = target("twall.json", "[1,-1,0]");
    let o = polyflow(&[
        "count",
        "--config",
        &a2(),
        "--target",
        &wall,
        "--toward",
        "0,-1,1",
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn wall_targets_agree_with_oracle_in_either_cell() {
    let wall = target("twall.json", "[1,-1,0]");
    for dir in ["0,1,-1", "1,1,-2"] {
        let o = polyflow(&[
            "count",
            "--config",
            &a2(),
            "--target",
            &wall,
            "--toward",
            dir,
            "--oracle",
        ]);
        assert_eq!(o.status.code(), Some(0));
        assert!(stdout(&o).starts_with("count: 1\n"));
    }
}

#[test]
fn outside_the_cone_counts_zero() {
    let outside = target("tout.json", "[-1,0,1]");
    let o = polyflow(&["count", "--config", &a2(), "--target", &outside, "--oracle"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("count: 0\n"));
}

#[test]
fn terms_refer_to_input_positions() {
    let t = target("t101.json", "[1,0,-1]");
    let run = |order: &str| {
        let o = polyflow(&[
            "--json",
            "count",
            "--config",
            &a2(),
            "--target",
            &t,
            "--order",
            order,
        ]);
        assert_eq!(o.status.code(), Some(0));
        serde_json::from_slice::<Value>(&o.stdout).unwrap()
    };
    let identity = run("0,1,2");
    let shuffled = run("2,0,1");
    assert_eq!(identity["totals"], shuffled["totals"]);
    let terms = shuffled["terms"].as_array().unwrap();
    assert!(!terms.is_empty());
    for term in terms {
        let top = term["nested"].as_array().unwrap().last().unwrap();
        assert_eq!(top, &serde_json::json!([0, 1, 2]));
    }
    assert_eq!(shuffled["details"]["order"], serde_json::json!([2, 0, 1]));
}

#[test]
fn json_is_deterministic_across_thread_counts() {
    let m = fixture("m33.json", r#"{"rows": [2, 2, 2], "cols": [2, 2, 2]}"#);
    let run = |threads: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_polyflow"));
        cmd.args([
            "--json",
            "cells",
            "--config",
            &a2(),
            "--check-order-invariance",
            "2",
        ]);
        if let Some(t) = threads {
            cmd.env("RAYON_NUM_THREADS", t);
        }
        let o = cmd.output().unwrap();
        assert_eq!(o.status.code(), Some(0));
        let mut v: Value = serde_json::from_slice(&o.stdout).unwrap();
        v.as_object_mut().unwrap().remove("timing_ms");
        v
    };
    assert_eq!(run(Some("1")), run(None));
    assert_eq!(run(Some("1")), run(Some("4")));

    let run = |threads: &str| {
        let o = Command::new(env!("CARGO_BIN_EXE_polyflow"))
            .args([
                "--json",
                "magic",
                "COUNT",
                "3",
                "3",
                "--margins",
                m.to_str().unwrap(),
            ])
            .env("RAYON_NUM_THREADS", threads)
            .output()
            .unwrap();
        let mut v: Value = serde_json::from_slice(&o.stdout).unwrap();
        v.as_object_mut().unwrap().remove("timing_ms");
        v
    };
    let one = run("1");
    assert_eq!(one["totals"]["count"], "21");
    assert_eq!(one, run("3"));
}

#[test]
fn k22_graph_with_margins_three() {
    let g = fixture(
        "k22.json",
        r#"{"vertices": ["r1","r2","c1","c2"],
            "edges": [["c1","r1"],["c2","r1"],["c1","r2"],["c2","r2"]]}"#,
    );
    let w = fixture(
        "k22w.json",
        r#"{"weights": {"r1": 3, "r2": 3, "c1": -3, "c2": -3}}"#,
    );
    let (g, w) = (g.to_str().unwrap(), w.to_str().unwrap());
    let o = polyflow(&["count", "--graph", g, "--weights", w, "--oracle"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("count: 4\n"));
    let o = polyflow(&["ehrhart", "--graph", g, "--weights", w, "--oracle"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(
        stdout(&o).starts_with("ehrhart: 3 t + 1\n"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn oriented_cycle_exits_3() {
    let g = fixture(
        "cycle.json",
        r#"{"vertices": ["x", "y", "z"], "edges": [[0, 1], [1, 2], [2, 0]]}"#,
    );
    let w = fixture("cyclew.json", r#"{"weights": {"x": 0, "y": 0, "z": 0}}"#);
    let o = polyflow(&[
        "count",
        "--graph",
        g.to_str().unwrap(),
        "--weights",
        w.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(3));
}
