//! End-to-end tests of the `spincorr` binary: report formatting, CSV
//! golden-file regression, byte determinism, exit codes and configuration
//! precedence.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_spincorr"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn tmp_path(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("spincorr-test-{}-{name}", std::process::id()))
}

#[test]
fn point_tfim_classical_limit() {
    let out = run(&["point", "--model", "tfim", "--g", "0", "--L", "64"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("I=1.00000000000e0"), "{text}");
    assert!(text.contains("C=1.00000000000e0"));
    assert!(text.contains("Q=0.00000000000e0"));
    assert!(text.contains("theta_opt=1.57079632679e0"));
}

#[test]
fn point_lmg_symmetric_phase() {
    let out = run(&["point", "--model", "lmg", "--lambda", "1.5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("C=0.00000000000e0"), "{text}");
    assert!(text.contains("Q=0.00000000000e0"));
}

#[test]
fn point_xstate_classical_doublet() {
    let out = run(&["point", "--model", "xstate", "--c1", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("I=1.00000000000e0"), "{text}");
    assert!(text.contains("C=1.00000000000e0"));
    assert!(text.contains("Q=0.00000000000e0"));
}

#[test]
fn sweep_matches_golden_file() {
    let out = run(&[
        "sweep", "--model", "tfim", "--L", "64", "--from", "0", "--to", "2", "--steps", "11",
    ]);
    assert!(out.status.success());
    let golden = std::fs::read_to_string(
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden/tfim_l64_sweep.csv"),
    )
    .expect("golden file present");
    assert_eq!(stdout(&out), golden);
}

#[test]
fn sweep_bytes_independent_of_threads() {
    let path1 = tmp_path("t1.csv");
    let path2 = tmp_path("t2.csv");
    for (threads, path) in [("1", &path1), ("4", &path2)] {
        let out = run(&[
            "sweep", "--model", "lmg", "--from", "0", "--to", "2", "--steps", "21", "--threads",
            threads, "--out", path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    let a = std::fs::read(&path1).unwrap();
    let b = std::fs::read(&path2).unwrap();
    assert_eq!(a, b);
    // C = Q in the broken phase (pure-state pairs)
    let text = String::from_utf8(a).unwrap();
    for line in text.lines().skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        let lambda: f64 = fields[2].parse().unwrap();
        if lambda < 1.0 {
            assert_eq!(fields[13], fields[14], "C vs Q at lambda = {lambda}");
        }
    }
    let _ = std::fs::remove_file(&path1);
    let _ = std::fs::remove_file(&path2);
}

#[test]
fn exit_codes() {
    // unknown flag -> argument error
    let out = run(&["point", "--model", "tfim", "--nope", "1"]);
    assert_eq!(out.status.code(), Some(1));
    // missing required option -> argument error
    let out = run(&["point", "--model", "tfim", "--g", "1"]);
    assert_eq!(out.status.code(), Some(1));
    // unphysical state -> numerical failure
    let out = run(&["point", "--model", "xstate", "--c1", "0.9", "--c3", "0.9"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!String::from_utf8(out.stderr).unwrap().is_empty());
    // help exits 0
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn failed_sweep_leaves_no_partial_file() {
    let path = tmp_path("partial.csv");
    let out = run(&[
        "sweep", "--model", "tfim", "--L", "64", "--from", "-1", "--to", "1", "--steps", "5",
        "--out", path.to_str().unwrap(),
    ]);
    assert!(!out.status.success());
    assert!(!path.exists(), "partial output left behind");
}

#[test]
fn config_file_flags_win() {
    let cfg = tmp_path("cfg");
    std::fs::write(&cfg, "model=tfim\ng=1.0\nL=64\n# comment\n").unwrap();
    // config alone
    let out = run(&["point", "--config", cfg.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(!stdout(&out).contains("C=1.00000000000e0"));
    // flag overrides g from the file
    let out = run(&["point", "--config", cfg.to_str().unwrap(), "--g", "0"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("C=1.00000000000e0"));
    let _ = std::fs::remove_file(&cfg);
}

#[test]
fn thread_env_var() {
    let out = bin()
        .args(["point", "--model", "tfim", "--g", "1", "--L", "64"])
        .env("SPINCORR_THREADS", "2")
        .output()
        .unwrap();
    assert!(out.status.success());
    let out = bin()
        .args(["point", "--model", "tfim", "--g", "1", "--L", "64"])
        .env("SPINCORR_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn crossing_xxz_heisenberg_point() {
    let out = run(&["crossing", "--model", "xxz", "--L", "8"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let value: f64 = text
        .trim()
        .strip_prefix("param_star=")
        .expect("param_star line")
        .parse()
        .unwrap();
    assert!((value + 1.0).abs() < 1e-6, "crossing at {value}");
}

#[test]
fn scaling_emits_fit_comment() {
    let out = run(&[
        "scaling", "--model", "tfim", "--sizes", "64,128,256,512", "--target", "dc-dg-min",
        "--steps", "91",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.starts_with("L,param_star,value_star\n"), "{text}");
    assert!(text.contains("# fit: a0="));
    assert!(text.contains("rms="));
}
