use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use multiclaw::harness::{read_csv, CSV_COLUMNS};

fn harness(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mclaw-harness"))
        .args(args)
        .output()
        .expect("harness binary runs")
}

fn sweep_to(path: &Path, extra: &[&str]) -> Output {
    let mut args = vec![
        "sweep", "--algo", "mclaw", "--l", "2", "--n", "2^8,2^9,2^10,2^11,2^12", "--trials", "30",
        "--seed", "42", "--out",
    ];
    args.push(path.to_str().unwrap());
    args.extend_from_slice(extra);
    harness(&args)
}

#[test]
fn sweep_csv_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    assert!(sweep_to(&a, &[]).status.success());
    assert!(sweep_to(&b, &[]).status.success());
    let bytes = fs::read(&a).unwrap();
    assert_eq!(bytes, fs::read(&b).unwrap());
    let text = String::from_utf8(bytes).unwrap();
    assert_eq!(text.lines().next().unwrap(), CSV_COLUMNS.join(","));
    assert_eq!(text.lines().count(), 6);
}

#[test]
fn worker_count_does_not_change_output() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    let one = Command::new(env!("CARGO_BIN_EXE_mclaw-harness"))
        .env("MCLAW_WORKERS", "1")
        .args(["sweep", "--algo", "collision", "--l", "3", "--n", "1024,4096", "--trials", "30", "--seed", "3", "--out"])
        .arg(&a)
        .status()
        .unwrap();
    let four = Command::new(env!("CARGO_BIN_EXE_mclaw-harness"))
        .env("MCLAW_WORKERS", "4")
        .args(["sweep", "--algo", "collision", "--l", "3", "--n", "1024,4096", "--trials", "30", "--seed", "3", "--out"])
        .arg(&b)
        .status()
        .unwrap();
    assert!(one.success() && four.success());
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn fit_reads_sweep_output() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("s.csv");
    assert!(sweep_to(&csv, &[]).status.success());
    let records = read_csv(fs::File::open(&csv).unwrap()).unwrap();
    assert_eq!(records.len(), 5);
    let out = harness(&["fit", "--in", csv.to_str().unwrap()]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("slope"), "{text}");
    // exit status mirrors the tolerance verdict
    assert_eq!(out.status.success(), text.contains("within tolerance"));
}

#[test]
fn json_config_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("sweep.json");
    let csv = dir.path().join("out.csv");
    fs::write(
        &config,
        r#"{"algorithm": "bht", "l": 2, "N": [1024, 2048], "c_N": 1.0, "k": 4, "trials": 30, "seed": 1}"#,
    )
    .unwrap();
    let out = harness(&[
        "sweep", "--config", config.to_str().unwrap(), "--seed", "9", "--out", csv.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let records = read_csv(fs::File::open(&csv).unwrap()).unwrap();
    assert_eq!(records.len(), 2);
    assert!(records.iter().all(|r| r.seed == 9 && r.algorithm.name() == "bht"));
}

#[test]
fn infeasible_sweep_fails_before_running() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("never.csv");
    let out = harness(&[
        "sweep", "--algo", "mclaw", "--l", "4", "--n", "2^21", "--trials", "30", "--seed", "0", "--out",
        csv.to_str().unwrap(),
    ]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("infeasible"));
    assert!(!csv.exists());
}

#[test]
fn bad_inputs_exit_nonzero() {
    assert!(!harness(&["fit", "--in", "/nonexistent.csv"]).status.success());
    assert!(!harness(&["validate", "--suite", "nonsense"]).status.success());
    assert!(!harness(&["bound-table", "--l-max", "1"]).status.success());
    let dir = tempfile::tempdir().unwrap();
    let short = dir.path().join("short.csv");
    assert!(harness(&[
        "sweep", "--algo", "mclaw", "--l", "2", "--n", "256,512", "--trials", "30", "--seed", "1", "--out",
        short.to_str().unwrap(),
    ])
    .status
    .success());
    // two points are too few for a fit
    assert!(!harness(&["fit", "--in", short.to_str().unwrap()]).status.success());
}

#[test]
fn grover_suite_passes_and_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("checks.csv");
    let out = harness(&["validate", "--suite", "grover", "--out", csv.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("PASS"));
    assert!(fs::read_to_string(csv).unwrap().starts_with("grid_version,suite,check"));
}
