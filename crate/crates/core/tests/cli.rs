use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use mesonet::temporal::{parse_timed_edges, shift_analysis, SnapshotPair};
use rand::Rng;

fn mesonet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mesonet")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn config() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs/paper-defaults.json")
}

fn write(dir: &Path, name: &str, contents: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn triangle_edge_list_on_stdout() {
    let out = mesonet(&["generate", "--model", "a", "--steps", "0", "--c", "1", "--n0", "3"]);
    assert_eq!(stdout(&out), "0\t1\t1\n0\t2\t1\n1\t2\t1\n");
}

#[test]
fn same_seed_gives_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config();
    for run in ["x", "y"] {
        let prefix = dir.path().join(run).join("net");
        fs::create_dir(dir.path().join(run)).unwrap();
        let out = mesonet(&[
            "generate",
            "--config",
            cfg.to_str().unwrap(),
            "--model",
            "b",
            "--nodes",
            "2000",
            "--seed",
            "7",
            "--out",
            prefix.to_str().unwrap(),
        ]);
        stdout(&out);
    }
    for ext in ["tsv", "json"] {
        let a = fs::read(dir.path().join(format!("x/net.{ext}"))).unwrap();
        let b = fs::read(dir.path().join(format!("y/net.{ext}"))).unwrap();
        assert!(!a.is_empty());
        assert_eq!(a, b, "net.{ext} differs");
    }
    let manifest: serde_json::Value =
        serde_json::from_slice(&fs::read(dir.path().join("x/net.manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["seed"], 7);
    assert_eq!(manifest["params"]["model"], "b");
}

#[test]
fn decompose_triangle_with_pendant() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "g.tsv", "0 1\n1 2\n0 2\n2 3\n");
    let out = mesonet(&["decompose", "--in", &input]);
    let text = stdout(&out);
    let ranks: Vec<&str> = text.lines().skip(1).map(|l| l.split(',').nth(1).unwrap()).collect();
    assert_eq!(ranks, ["2", "2", "2", "1"]);

    let out_dir = dir.path().join("out");
    stdout(&mesonet(&["decompose", "--in", &input, "--out-dir", out_dir.to_str().unwrap(), "--run-id", "tri"]));
    assert_eq!(fs::read_to_string(out_dir.join("tri.shells.csv")).unwrap(), text);
    assert!(out_dir.join("tri.manifest.json").exists());
}

#[test]
fn validate_reports_one_table_row() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("a");
    stdout(&mesonet(&["generate", "--model", "a", "--nodes", "400", "--seed", "3", "--out", prefix.to_str().unwrap()]));
    let edges = format!("{}.tsv", prefix.display());
    let labels = format!("{}.json", prefix.display());
    let text = stdout(&mesonet(&["validate", "--in", &edges, "--labels", &labels]));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0].split('\t').collect::<Vec<_>>(), ["nodes", "detected", "marked", "misidentified", "efficiency_pct"]);
    let row: Vec<f64> = lines[1].split('\t').map(|c| c.parse().unwrap()).collect();
    assert_eq!(row[0], 400.0);
    let (detected, marked, wrong) = (row[1], row[2], row[3]);
    assert!(wrong <= detected + marked);
    assert!((row[4] - 100.0 * (1.0 - wrong / marked)).abs() < 0.006);
}

#[test]
fn metrics_write_one_table_per_metric() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("b");
    stdout(&mesonet(&["generate", "--model", "b", "--nodes", "1500", "--seed", "1", "--out", prefix.to_str().unwrap()]));
    let edges = format!("{}.tsv", prefix.display());
    let labels = format!("{}.json", prefix.display());
    let out_dir = dir.path().join("m");
    stdout(&mesonet(&[
        "metrics",
        "--in",
        &edges,
        "--labels",
        &labels,
        "--metric",
        "degree,strength,edge_weight,cc,wknn,strength-profile",
        "--out-dir",
        out_dir.to_str().unwrap(),
    ]));
    for tag in ["degree", "strength", "edge_weight", "cc", "wknn", "strength_profile"] {
        let csv = fs::read_to_string(out_dir.join(format!("b.{tag}.csv"))).unwrap();
        assert!(csv.lines().count() > 2, "{tag}");
    }
    let manifest: serde_json::Value =
        serde_json::from_slice(&fs::read(out_dir.join("b.manifest.json")).unwrap()).unwrap();
    assert!(manifest["params"]["fits"]["degree"]["gamma"].as_f64().unwrap() > 1.0);
    // several metrics without an output directory is a usage error
    let out = mesonet(&["metrics", "--in", &edges, "--metric", "degree,cc"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn evolve_matches_the_library() {
    let dir = tempfile::tempdir().unwrap();
    let mut rng = mesonet::generator::rng_for(5, 9);
    let mut text = String::new();
    for t in 0..500 {
        let span = 15 + t / 5;
        let u = rng.gen_range(0..span);
        let v = if rng.gen_bool(0.5) { rng.gen_range(0..6) } else { rng.gen_range(0..span) };
        if u != v {
            text.push_str(&format!("{u} {v} 1 {t}\n"));
        }
    }
    let input = write(dir.path(), "timed.tsv", &text);
    let csv = stdout(&mesonet(&["evolve", "--in", &input, "--t1", "200", "--t2", "499", "--fraction", "0.05"]));
    let edges = parse_timed_edges(text.as_bytes(), Path::new("timed.tsv")).unwrap();
    let pair = SnapshotPair::from_edges(&edges, 200, 499, false, 0.05).unwrap();
    let stats = shift_analysis(&pair);
    assert!(stats.shifted_count() > 0);
    assert_eq!(csv, stats.to_csv());
}

#[test]
fn exit_codes_separate_usage_from_data_errors() {
    assert_eq!(mesonet(&["--help"]).status.code(), Some(0));
    assert_eq!(mesonet(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(mesonet(&["generate", "--m", "0"]).status.code(), Some(1));
    assert_eq!(mesonet(&["generate", "--nodes", "10", "--steps", "5"]).status.code(), Some(1));
    assert_eq!(mesonet(&["decompose", "--in", "/nonexistent/edges.tsv"]).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.tsv", "0 1\n1 x\n");
    let out = mesonet(&["decompose", "--in", &bad, "--out-dir", dir.path().join("o").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!dir.path().join("o").exists(), "no partial outputs on failure");
}

#[test]
fn a_finished_run_is_never_overwritten() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("run");
    let args = ["generate", "--nodes", "50", "--seed", "1", "--out", prefix.to_str().unwrap()];
    stdout(&mesonet(&args));
    let before = fs::read(dir.path().join("run.tsv")).unwrap();
    let again = mesonet(&["generate", "--nodes", "50", "--seed", "2", "--out", prefix.to_str().unwrap()]);
    assert_eq!(again.status.code(), Some(2));
    assert_eq!(fs::read(dir.path().join("run.tsv")).unwrap(), before);
}
