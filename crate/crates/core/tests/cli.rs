mod common;

use std::fs;
use std::path::Path;
use std::process::Command;

use common::*;
use zonomon::trace::{read_hulls, read_verdicts, write_trace};

fn zonomon(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_zonomon"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write_confined(dir: &Path) -> std::path::PathBuf {
    let spec = dir.join("confined.lola");
    fs::write(&spec, zonomon::specs::CONFINED_ROBOT).unwrap();
    spec
}

#[test]
fn monitor_memory_table_trace() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_confined(dir.path());
    let trace = dir.path().join("trace.csv");
    write_trace(&trace, &confined(), &table1_events()).unwrap();
    let (out, hulls) = (dir.path().join("v.csv"), dir.path().join("h.csv"));
    let (code, _) = zonomon(&[
        "monitor", "--spec", s(&spec), "--trace", s(&trace), "--out", s(&out), "--hulls", s(&hulls),
    ]);
    assert_eq!(code, 0);
    let verdicts = read_verdicts(&out).unwrap();
    assert_eq!(verdicts.len(), 6);
    assert!(verdicts.iter().all(|v| !v.fired));
    let (lo, hi) = read_hulls(&hulls).unwrap()[2]["position_x"];
    assert!((lo - 2.0752).abs() < 1e-9 && (hi - 2.9488).abs() < 1e-9);
}

#[test]
fn fired_trigger_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("s.lola");
    fs::write(&spec, "input x: Float\ntrigger x >[0.5] 1.0 \"high\"\n").unwrap();
    let trace = dir.path().join("t.csv");
    fs::write(&trace, "x\n0.5\n2.0\n").unwrap();
    let out = dir.path().join("v.csv");
    let (code, _) = zonomon(&["monitor", "--spec", s(&spec), "--trace", s(&trace), "--out", s(&out)]);
    assert_eq!(code, 1);
    let fired: Vec<bool> = read_verdicts(&out).unwrap().iter().map(|v| v.fired).collect();
    assert_eq!(fired, vec![false, true]);
}

#[test]
fn malformed_spec_exits_two_with_diagnostics() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("bad.lola");
    fs::write(&spec, "input x: Float\noutput y := z + 1.0\n").unwrap();
    let trace = dir.path().join("t.csv");
    fs::write(&trace, "x\n1\n").unwrap();
    let out = dir.path().join("v.csv");
    let (code, stderr) = zonomon(&["monitor", "--spec", s(&spec), "--trace", s(&trace), "--out", s(&out)]);
    assert_eq!(code, 2);
    assert!(stderr.contains("bad.lola:2:13: unknown stream z"), "{stderr}");
}

#[test]
fn zero_budget_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_confined(dir.path());
    let trace = dir.path().join("trace.csv");
    write_trace(&trace, &confined(), &table1_events()).unwrap();
    let out = dir.path().join("v.csv");
    let (code, stderr) = zonomon(&[
        "monitor", "--spec", s(&spec), "--trace", s(&trace), "--out", s(&out), "--reduce", "girard",
        "--limit", "0",
    ]);
    assert_eq!(code, 2);
    assert!(stderr.contains("budget"), "{stderr}");
}

#[test]
fn simulate_is_deterministic_and_noise_free_matches_truth() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, extra: &[&str]| {
        let out = dir.path().join(format!("{name}.csv"));
        let truth = dir.path().join(format!("{name}_truth.csv"));
        let mut args = vec![
            "simulate", "--scenario", "confined", "--steps", "50", "--seed", "3", "--out", s(&out),
            "--truth", s(&truth),
        ];
        args.extend_from_slice(extra);
        assert_eq!(zonomon(&args).0, 0);
        (fs::read_to_string(out).unwrap(), fs::read_to_string(truth).unwrap())
    };
    let a = run("a", &[]);
    let b = run("b", &[]);
    assert_eq!(a, b);
    let clean = run("c", &["--delta", "0", "--mu", "0"]);
    assert_ne!(clean.0, a.0);
    assert_eq!(clean.1, a.1);
}

#[test]
fn bench_writes_tables() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("omni.lola");
    fs::write(&spec, zonomon::specs::OMNI_ROBOT).unwrap();
    for seed in ["1", "2"] {
        let out = dir.path().join(format!("trace_{seed}.csv"));
        let truth = dir.path().join(format!("truth_{seed}.csv"));
        let args = [
            "simulate", "--scenario", "omni", "--steps", "40", "--seed", seed, "--out", s(&out),
            "--truth", s(&truth),
        ];
        assert_eq!(zonomon(&args).0, 0);
    }
    let pattern = format!("{}/trace_*.csv", s(dir.path()));
    let out_dir = dir.path().join("results");
    let (code, stderr) = zonomon(&[
        "bench", "--spec", s(&spec), "--traces", &pattern, "--methods", "girard", "--limits", "8",
        "--out-dir", s(&out_dir),
    ]);
    assert_eq!(code, 0, "{stderr}");
    let sweep = fs::read_to_string(out_dir.join("sweep.csv")).unwrap();
    assert_eq!(sweep.lines().count(), 2);
    assert!(sweep.lines().nth(1).unwrap().starts_with("girard,8,"));
    assert_eq!(fs::read_to_string(out_dir.join("errors.csv")).unwrap().lines().count(), 41);
    assert_eq!(fs::read_to_string(out_dir.join("fpr.csv")).unwrap().lines().count(), 3);
}

#[test]
fn bench_without_traces_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_confined(dir.path());
    let pattern = format!("{}/none_*.csv", s(dir.path()));
    let out_dir = dir.path().join("results");
    let (code, stderr) = zonomon(&[
        "bench", "--spec", s(&spec), "--traces", &pattern, "--limits", "6", "--out-dir", s(&out_dir),
    ]);
    assert_eq!(code, 2);
    assert!(stderr.contains("no trace files"));
}

#[test]
fn unknown_flag_exits_two() {
    assert_eq!(zonomon(&["monitor", "--bogus"]).0, 2);
    assert_eq!(zonomon(&["--help"]).0, 0);
}
