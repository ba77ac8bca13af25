//! End-to-end runs of the `graphforms` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_graphforms"))
        .args(args)
        .env_remove("GRAPHFORMS_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const PSI_W3: &str = "x1*x2*x3 + x1*x2*x4 + x1*x2*x5 + x1*x3*x4 + x1*x3*x6 + x1*x4*x5 + x1*x4*x6 + x1*x5*x6 \
    + x2*x3*x5 + x2*x3*x6 + x2*x4*x5 + x2*x4*x6 + x2*x5*x6 + x3*x4*x5 + x3*x4*x6 + x3*x5*x6\n";

#[test]
fn psi_of_the_wheel_and_the_banana() {
    let o = run(&["psi", "--fixture", "wheel3", "--verify"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), PSI_W3);
    assert_eq!(stdout(&run(&["psi", "--fixture", "banana3"])), "x1*x2 + x1*x3 + x2*x3\n");
}

#[test]
fn dodgson_diagonal_is_a_derivative() {
    let o = run(&["dodgson", "--fixture", "wheel3", "-I", "1", "-J", "1"]);
    // ∂Ψ/∂x₁ of the reference polynomial: the terms containing x1, with x1 removed.
    let expected: Vec<String> = PSI_W3
        .trim()
        .split(" + ")
        .filter_map(|t| t.strip_prefix("x1*").map(str::to_string))
        .collect();
    assert_eq!(stdout(&o), expected.join(" + ") + "\n");
}

#[test]
fn forms() {
    assert_eq!(stdout(&run(&["form", "--fixture", "W3", "--spec", "1", "--symbolic"])), "(10) / Ψ^2 · Ω\n");
    assert_eq!(stdout(&run(&["form", "--fixture", "W3", "--spec", "2", "--symbolic"])), "0\n");
    let o = run(&["form", "--fixture", "W7", "--spec", "3", "--points", "40"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS  40 points"));
}

#[test]
fn integrate_json_and_exit_codes() {
    let o = run(&["integrate", "--fixture", "W3", "--spec", "1", "-n", "2e5", "--format", "json", "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    for key in ["graph", "spec", "sampler", "seed", "samples", "value", "std_error", "target", "sigmas"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["samples"], 200_000);
    let o = run(&["integrate", "--fixture", "W3", "-n", "1e5", "--target", "70"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("check     FAIL"));
}

#[test]
fn deterministic_given_seed_and_worker_independent() {
    let args = ["integrate", "--fixture", "W3", "-n", "50000", "--format", "json", "--seed", "9"];
    let a = stdout(&run(&args));
    let b = stdout(&run(&[&args[..], &["--workers", "3"]].concat()));
    assert_eq!(a, b);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["psi"]).status.code(), Some(2));
    assert_eq!(run(&["psi", "--fixture", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["homology", "--hmax", "7"]).status.code(), Some(2));
    assert_eq!(run(&["integrate", "--fixture", "W3", "-n", "lots"]).status.code(), Some(2));
    assert_eq!(run(&["integrate", "--fixture", "W5", "--spec", "1"]).status.code(), Some(2));
}

#[test]
fn graph_files_report_parse_positions() {
    let dir = std::env::temp_dir().join(format!("graphforms-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good: PathBuf = dir.join("theta.json");
    std::fs::write(&good, r#"{"v": 2, "edges": [[0, 1], [0, 1], [0, 1]]}"#).unwrap();
    assert_eq!(stdout(&run(&["psi", "--graph", good.to_str().unwrap()])), "x1*x2 + x1*x3 + x2*x3\n");
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\"v\": 2,\n \"edges\": [[0, 1],, ]}").unwrap();
    let o = run(&["psi", "--graph", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn homology_grid() {
    let o = run(&["homology", "--hmax", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("H_0  |     0  1  0  1  0"));
    assert!(out.ends_with("matches the reference table\n"));
}

#[test]
fn stokes_on_x5() {
    let o = run(&["stokes", "--fixture", "X5", "--spec", "2", "-n", "1e5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("check    PASS"));
}

#[test]
fn cache_hits_are_byte_identical() {
    let dir = std::env::temp_dir().join(format!("graphforms-cache-{}", std::process::id()));
    let args = ["integrate", "--fixture", "W3", "-n", "30000", "--format", "json"];
    let cached = |extra: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_graphforms"))
            .args(args)
            .args(extra)
            .env("GRAPHFORMS_CACHE_DIR", &dir)
            .output()
            .unwrap()
    };
    let cold = cached(&[]);
    assert_eq!(std::fs::read_dir(&dir).unwrap().count(), 1);
    let warm = cached(&[]);
    assert_eq!(cold.stdout, warm.stdout);
    assert_eq!(cold.stdout, run(&args).stdout);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn fixtures_and_selftest() {
    let out = stdout(&run(&["fixtures"]));
    assert!(out.contains("X5           7     11      5       1"));
    let o = run(&["selftest", "--quick"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}
