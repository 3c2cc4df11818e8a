//! End-to-end checks of the binary: output schemas, exit codes, and
//! byte-level determinism under a fixed seed.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_skewfit"))
}

fn tmp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("skewfit_cli_{tag}_{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap_or_else(|e| panic!("read {}: {e}", path.display()))
}

fn demo_csv() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data/synthetic_grades.csv")
}

#[test]
fn elicit_moments_schema() {
    let dir = tmp_dir("elicit_m");
    let out = run(&[
        "elicit", "--mean", "22.68", "--sd", "13.72", "--skew", "0.35",
        "--out", dir.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let summary: serde_json::Value =
        serde_json::from_str(&read(&dir.join("summary.json"))).unwrap();
    assert_eq!(summary["command"], "elicit");
    assert_eq!(summary["mode"], "moments");
    let alpha0 = summary["prior"]["alpha0"].as_f64().unwrap();
    assert!((alpha0 - 1.652987971452748).abs() < 1e-9);
    let xi0 = summary["nig"]["xi0"].as_f64().unwrap();
    assert!((xi0 - 9.861939528161463).abs() < 1e-9);
}

#[test]
fn elicit_mass_curve_schema_and_values() {
    let dir = tmp_dir("elicit_c");
    let out = run(&[
        "elicit", "--psi0", "10", "--lambda0", "7", "--out", dir.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let summary: serde_json::Value =
        serde_json::from_str(&read(&dir.join("summary.json"))).unwrap();
    let mass = summary["prob_alpha_negative"].as_f64().unwrap();
    assert!(mass < 0.05, "mass at lambda0=7 is {mass}");

    let fig = read(&dir.join("fig1.csv"));
    let mut lines = fig.lines();
    assert_eq!(lines.next().unwrap(), "lambda0,prob_alpha_negative");
    let first: Vec<f64> =
        lines.next().unwrap().split(',').map(|c| c.parse().unwrap()).collect();
    assert_eq!(first[0], 0.0);
    assert!((first[1] - 0.5).abs() < 1e-10, "lambda0=0 mass {}", first[1]);
    assert_eq!(fig.lines().count(), 17); // header + 0..=15
}

#[test]
fn elicit_flag_groups_are_exclusive() {
    let out = run(&["elicit", "--mean", "1.0", "--psi0", "2.0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["elicit"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let out = run(&["simulate", "--does-not-exist", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn fit_demo_dataset_schema() {
    let dir = tmp_dir("fit");
    let csv = demo_csv();
    let out = run(&[
        "fit", csv.to_str().unwrap(),
        "--prior", "skewnormal", "--alpha0", "0", "--psi0", "7", "--lambda0", "20",
        "--xi0", "21", "--kappa", "0.25", "--a", "2", "--b", "4",
        "--iters", "600", "--burnin", "100", "--seed", "5",
        "--out", dir.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let summary: serde_json::Value =
        serde_json::from_str(&read(&dir.join("summary.json"))).unwrap();
    assert_eq!(summary["command"], "fit");
    assert_eq!(summary["n"], 79);
    let params = summary["parameters"].as_array().unwrap();
    assert_eq!(params.len(), 3);
    for p in params {
        for key in ["mean", "lo2_5", "hi97_5"] {
            assert!(p[key].as_f64().unwrap().is_finite());
        }
        assert!(p["lo2_5"].as_f64().unwrap() <= p["hi97_5"].as_f64().unwrap());
    }
    // Config echo present.
    assert_eq!(summary["config"]["seed"], 5);
    assert_eq!(summary["config"]["prior"]["lambda0"], 20.0);
    // Bands CSV has the advertised grid length.
    let bands = read(&dir.join("bands.csv"));
    assert_eq!(bands.lines().count(), 102);
}

#[test]
fn fit_error_paths() {
    let dir = tmp_dir("fit_err");
    // Missing file: data error.
    let out = run(&[
        "fit", "/nonexistent/file.csv", "--lambda0", "20", "--xi0", "0", "--kappa", "1",
        "--a", "2", "--b", "2", "--out", dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));

    // Non-numeric row: line-numbered data error.
    let bad = dir.join("bad.csv");
    std::fs::write(&bad, "1.0\nnot-a-number\n2.0\n").unwrap();
    let out = run(&[
        "fit", bad.to_str().unwrap(), "--lambda0", "20", "--xi0", "0", "--kappa", "1",
        "--a", "2", "--b", "2", "--out", dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains(":2:"));

    // Too few rows: refusal.
    let tiny = dir.join("tiny.csv");
    std::fs::write(&tiny, "1.0\n2.0\n").unwrap();
    let out = run(&[
        "fit", tiny.to_str().unwrap(), "--lambda0", "20", "--xi0", "0", "--kappa", "1",
        "--a", "2", "--b", "2", "--out", dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));

    // Empty file.
    let empty = dir.join("empty.csv");
    std::fs::write(&empty, "").unwrap();
    let out = run(&[
        "fit", empty.to_str().unwrap(), "--lambda0", "20", "--xi0", "0", "--kappa", "1",
        "--a", "2", "--b", "2", "--out", dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn simulate_schema_and_tiny_run() {
    let dir = tmp_dir("sim");
    let out = run(&[
        "simulate", "--true-alpha", "1.0", "--n", "10", "--reps", "20",
        "--prior", "skewnormal", "--lambda0", "3", "--mc-draws", "100",
        "--seed", "3", "--out", dir.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = read(&dir.join("simstudy.csv"));
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(header[0], "estimand");
    assert!(header.contains(&"bias") && header.contains(&"mse"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row.len(), header.len());
    for idx in [12usize, 13] {
        let v: f64 = row[idx].parse().unwrap();
        assert!(v.is_finite());
    }
    // The skew-prior flag is mandatory for the skew prior.
    let out = run(&["simulate", "--n", "10", "--prior", "skewnormal"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn same_seed_means_byte_identical_outputs() {
    let csv = demo_csv();
    let mut outputs: Vec<(String, String)> = Vec::new();
    for tag in ["a", "b"] {
        let dir = tmp_dir(&format!("det_{tag}"));
        let out = run(&[
            "fit", csv.to_str().unwrap(),
            "--prior", "skewnormal", "--alpha0", "0", "--psi0", "7", "--lambda0", "20",
            "--xi0", "21", "--kappa", "0.25", "--a", "2", "--b", "4",
            "--iters", "400", "--burnin", "100", "--seed", "11",
            "--out", dir.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        outputs.push((read(&dir.join("summary.json")), read(&dir.join("bands.csv"))));
    }
    assert_eq!(outputs[0].0, outputs[1].0, "summary.json differs between identical runs");
    assert_eq!(outputs[0].1, outputs[1].1, "bands.csv differs between identical runs");

    // Same for simulate.
    let mut sims = Vec::new();
    for tag in ["c", "d"] {
        let dir = tmp_dir(&format!("det_{tag}"));
        let out = run(&[
            "simulate", "--n", "8", "--reps", "10", "--mc-draws", "50", "--seed", "17",
            "--out", dir.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        sims.push((read(&dir.join("simstudy.csv")), read(&dir.join("summary.json"))));
    }
    assert_eq!(sims[0], sims[1]);
}
