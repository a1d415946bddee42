use std::path::Path;
use std::process::{Command, Output};

use intrans_cli::report::Table;

fn intrans(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_intrans"))
        .args(args)
        .env_remove("INTRANS_SEED")
        .output()
        .expect("binary runs")
}

fn out_dir(dir: &Path) -> String {
    dir.to_str().unwrap().to_string()
}

#[test]
fn no_arguments_prints_usage_and_fails() {
    let out = intrans(&[]);
    assert!(!out.status.success());
    let text = String::from_utf8_lossy(&out.stdout) + String::from_utf8_lossy(&out.stderr);
    assert!(text.contains("Usage"));
}

#[test]
fn unknown_subcommand_fails() {
    assert!(!intrans(&["frobnicate"]).status.success());
}

#[test]
fn table1_prints_worked_example() {
    let dir = tempfile::tempdir().unwrap();
    let out = intrans(&["table1", "--out-dir", &out_dir(dir.path())]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    let row1: Vec<&str> = stdout.lines().nth(1).unwrap().split_whitespace().collect();
    assert_eq!(row1, ["1", "1600", "4", "1630", "3", "1642", "3.5", "1"]);
    let row5: Vec<&str> = stdout.lines().nth(5).unwrap().split_whitespace().collect();
    assert_eq!(row5, ["5", "1600", "0", "1570", "2", "1573", "1", "4.5"]);
    assert!(dir.path().join("table1.csv").exists());
    assert!(dir.path().join("manifest.txt").exists());
}

#[test]
fn range_error_names_key() {
    let dir = tempfile::tempdir().unwrap();
    let out = intrans(&["timeseries", "--p-rand", "1.5", "--out-dir", &out_dir(dir.path())]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("p_rand"));
}

#[test]
fn manifest_replays_the_run() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let first = intrans(&[
        "timeseries",
        "--n-players",
        "7",
        "--p-rand",
        "0.3",
        "--instances",
        "25",
        "--seed",
        "11",
        "--out-dir",
        &out_dir(a.path()),
    ]);
    assert!(first.status.success());
    let manifest = a.path().join("manifest.txt");
    let text = std::fs::read_to_string(&manifest).unwrap();
    assert!(text.contains("# artifact: "));
    let second = intrans(&[
        "timeseries",
        "--config",
        manifest.to_str().unwrap(),
        "--out-dir",
        &out_dir(b.path()),
    ]);
    assert!(second.status.success());
    assert_eq!(
        std::fs::read(a.path().join("timeseries.csv")).unwrap(),
        std::fs::read(b.path().join("timeseries.csv")).unwrap()
    );
}

#[test]
fn seed_falls_back_to_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_intrans"))
        .args(["timeseries", "--out-dir", &out_dir(dir.path())])
        .env("INTRANS_SEED", "4242")
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = std::fs::read_to_string(dir.path().join("manifest.txt")).unwrap();
    assert!(text.lines().any(|l| l == "seed = 4242"));
}

#[test]
fn timeseries_csv_shape() {
    let dir = tempfile::tempdir().unwrap();
    let out = intrans(&[
        "timeseries",
        "--n-players",
        "6",
        "--instances",
        "20",
        "--discard",
        "5",
        "--out-dir",
        &out_dir(dir.path()),
    ]);
    assert!(out.status.success());
    let t = Table::read(&dir.path().join("timeseries.csv")).unwrap();
    assert_eq!(t.rows.len(), 15 * 6);
    assert_eq!(t.rows[0][0], "5");
    assert!(t.rows.iter().all(|r| r.len() == 8));
}

#[test]
fn plot_renders_and_rejects_unknown_columns() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("data.csv");
    std::fs::write(&csv, "p_rand,a,b\n0.1,1,2\n0.5,2,3.5\n").unwrap();
    let svg = dir.path().join("ab.svg");
    let ok = intrans(&[
        "plot",
        "--input",
        csv.to_str().unwrap(),
        "--x",
        "a",
        "--y",
        "b",
        "--group",
        "p_rand",
        "--output",
        svg.to_str().unwrap(),
        "--out-dir",
        &out_dir(dir.path()),
    ]);
    assert!(ok.status.success());
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<svg") && text.trim_end().ends_with("</svg>"));
    let bad = intrans(&[
        "plot",
        "--input",
        csv.to_str().unwrap(),
        "--x",
        "a",
        "--y",
        "zzz",
        "--out-dir",
        &out_dir(dir.path()),
    ]);
    assert!(!bad.status.success());
    assert!(String::from_utf8_lossy(&bad.stderr).contains("zzz"));
}

#[test]
fn small_scatter_writes_data_summary_and_plots() {
    let dir = tempfile::tempdir().unwrap();
    let out = intrans(&[
        "scatter",
        "--grid-n",
        "5,6",
        "--grid-p-rand",
        "0.1,0.5",
        "--reps",
        "3",
        "--instances",
        "15",
        "--discard",
        "3",
        "--out-dir",
        &out_dir(dir.path()),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let data = Table::read(&dir.path().join("scatter.csv")).unwrap();
    let summary = Table::read(&dir.path().join("scatter_summary.csv")).unwrap();
    assert_eq!(data.rows.len(), 12);
    assert_eq!(summary.rows.len(), 4);
    assert!(dir.path().join("scatter_itx_norm_vs_kld_avg.svg").exists());
}
