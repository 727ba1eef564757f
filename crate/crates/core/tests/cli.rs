//! End-to-end coverage of the command-line surface and its exit-status
//! contract: 0 success, 1 violation, 2 indeterminate, 3 usage error.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rainbow-ch"))
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    bin()
        .args(["--output", dir.to_str().unwrap()])
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn construct_writes_files_and_reports_edge_count() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["construct", "E1", "9", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("24 edges"));
    assert!(dir.path().join("construct_E1_9_1.txt").exists());
    assert!(dir.path().join("construct_E1_9_1.g6").exists());
    assert!(dir.path().join("construct_E1_9_1.json").exists());
}

#[test]
fn invalid_construction_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["construct", "E4", "15", "1"]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("6t - n + 6"));
}

#[test]
fn unknown_subcommand_is_usage_error() {
    let out = bin().arg("frobnicate").output().unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn malformed_graph_file_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "3\n0 9\n").unwrap();
    let out = run_in(dir.path(), &["tile", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn tile_and_partition_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run_in(dir.path(), &["construct", "E1", "9", "1"]).status.code(), Some(0));
    let graph_file = dir.path().join("construct_E1_9_1.txt");
    let out = run_in(dir.path(), &["tile", graph_file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("|T|=1 |M|=3 |I|=0"));
    let out = run_in(dir.path(), &["partition", graph_file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(dir.path().join("partition.json").exists());
    assert!(dir.path().join("partition_profile.csv").exists());
    // The graph6 file parses too.
    let g6_file = dir.path().join("construct_E1_9_1.g6");
    let out = run_in(dir.path(), &["tile", g6_file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn tiny_budget_is_indeterminate() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run_in(dir.path(), &["construct", "E1", "21", "3"]).status.code(), Some(0));
    let graph_file = dir.path().join("construct_E1_21_3.txt");
    let out = run_in(dir.path(), &["--budget", "5", "tile", graph_file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn color_then_rainbow_search() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run_in(dir.path(), &["color", "E1", "9", "1"]).status.code(), Some(0));
    let coloring = dir.path().join("color_E1_9_1.json");
    let out = run_in(dir.path(), &["rainbow", coloring.to_str().unwrap(), "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("no rainbow 3K3"));
    // The all-distinct coloring of the same K9 does contain one.
    let rainbow_json = {
        let mut edges = Vec::new();
        let mut c = 0;
        for u in 0..9 {
            for v in u + 1..9 {
                c += 1;
                edges.push(format!("[{u},{v},{c}]"));
            }
        }
        format!(r#"{{"n":9,"num_colors":36,"edges":[{}]}}"#, edges.join(","))
    };
    let path = dir.path().join("rainbow_k9.json");
    std::fs::write(&path, rainbow_json).unwrap();
    let out = run_in(dir.path(), &["rainbow", path.to_str().unwrap(), "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("found"));
}

#[test]
fn verify_construction_exit_status() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["verify-construction", "E1", "12", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("no rainbow 3K3"));
}

#[test]
fn formula_values() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["formula", "h", "1", "0", "0", "0", "2", "3"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "27");
    let out = run_in(dir.path(), &["formula", "xi", "100", "10"]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("2970"));
    // ar1 outside its hypothesis without the override flag is an error.
    let out = run_in(dir.path(), &["formula", "ar1", "9", "0"]);
    assert_eq!(out.status.code(), Some(3));
    let out = run_in(dir.path(), &["formula", "ar1", "9", "0", "--allow-outside"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("22"));
}

#[test]
fn ex_oracle_cli() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["ex-oracle", "6", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("12"));
}

#[test]
fn ar_oracle_small_with_checkpoint_resume() {
    let dir = tempfile::tempdir().unwrap();
    let ckpt = dir.path().join("ar.ckpt");
    let args = [
        "ar-oracle",
        "4",
        "1",
        "--checkpoint",
        ckpt.to_str().unwrap(),
    ];
    let out = run_in(dir.path(), &args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).contains("ar(4,1K3) = 4"));
    assert!(ckpt.exists());
    let lines_before = std::fs::read_to_string(&ckpt).unwrap().lines().count();
    // Resume: everything is already done, so the answer reproduces.
    let out = run_in(dir.path(), &args);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("ar(4,1K3) = 4"));
    assert!(lines_before > 0);
}

#[test]
fn scan_cli_exhaustive_n5() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["--workers", "4", "scan", "exhaustive", "5", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("1024 instances"));
    assert!(stdout.contains("0 violations"));
}

#[test]
fn identity_check_cli() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["identity-check", "--samples", "500"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(dir.path().join("identity_check.json").exists());
}

#[test]
fn fact_scan_cli() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &["--workers", "2", "fact-scan", "2.3", "--samples", "5000"],
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(dir.path().join("fact_scan_2.3.json").exists());
}

#[test]
fn json_flag_prints_paths_only() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["--json", "color", "E1", "9", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.trim().ends_with("color_E1_9_1.json"));
}

#[test]
fn env_var_sets_output_dir() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .env("RAINBOW_CH_OUT", dir.path())
        .args(["color", "E1", "9", "1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(dir.path().join("color_E1_9_1.json").exists());
}

#[test]
fn config_file_merges_under_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, format!(r#"{{"seed": 5, "output_path": {:?}}}"#, dir.path())).unwrap();
    let out = bin()
        .args(["--config", cfg.to_str().unwrap(), "identity-check", "--samples", "100"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(dir.path().join("identity_check.json").exists());
}

#[test]
fn outputs_are_byte_identical_across_worker_counts() {
    let dir1 = tempfile::tempdir().unwrap();
    let dir2 = tempfile::tempdir().unwrap();
    let run = |dir: &Path, workers: &str| {
        let out = bin()
            .args(["--output", dir.to_str().unwrap(), "--workers", workers, "--seed", "11"])
            .args(["fact-scan", "4.1", "--samples", "20000"])
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0));
        std::fs::read(dir.join("fact_scan_4.1.json")).unwrap()
    };
    let a = run(dir1.path(), "1");
    let b = run(dir2.path(), "7");
    assert_eq!(a, b);
}
