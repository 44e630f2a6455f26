//! Byte-stable outputs for a pinned set of invocations, exit codes, and the negative control.
//! Set `MCOVER_BLESS=1` to rewrite the stored outputs.

mod common;

use common::{dir, run, CASES};
use std::process::Command;

#[test]
fn golden_outputs_are_stable() {
    let bless = std::env::var_os("MCOVER_BLESS").is_some();
    for (name, args) in CASES {
        let a = run(args);
        let b = run(args);
        assert_eq!(a.status.code(), Some(0), "{name}: {}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(a.stdout, b.stdout, "{name}: two runs differ");
        let path = dir().join(format!("{name}.out"));
        if bless {
            std::fs::write(&path, &a.stdout).unwrap();
        } else {
            let want = std::fs::read(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
            assert!(a.stdout == want, "{name}: output differs from {}", path.display());
        }
    }
}

#[test]
fn usage_errors_exit_two() {
    let out = run(&["hilbert", "--p", "7", "--n", "4", "--a", "1,0", "--b", "0,1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("n must divide p-1"));
    for args in [
        &["hilbert", "--p", "9", "--n", "2", "--a", "1,0", "--b", "0,1"][..],
        &["cover", "check", "--p", "5", "--n", "2", "--beta", "1,0", "--what", "cocycle"],
        &["seg", "order", "--input", "missing.json"],
        &["seg", "soc", "--input", "one_segment.json"],
        &["seg", "wsets", "--beta", "2", "--gamma", "1,2"],
        &["mtp", "assoc", "--p", "5", "--n", "2", "--beta", "1,1"],
        &["cover", "check", "--p", "5", "--n", "2", "--what", "nothing"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn cap_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_mcover"))
        .args(["cover", "check", "--p", "5", "--n", "2", "--beta", "1,1", "--what", "cocycle"])
        .env("MCOVER_CAP", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("exceed the cap of 100"));
    let out = Command::new(env!("CARGO_BIN_EXE_mcover"))
        .args(["verify-all", "--grid", "config", "--config", "small_grid.json"])
        .current_dir(dir())
        .env("MCOVER_CAP", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["data"]["skipped"].as_array().unwrap().len(), 2);
}

#[test]
fn perturbed_cocycle_fails_with_counterexample() {
    let out = run(&["cover", "check", "--p", "5", "--n", "2", "--beta", "1,1", "--what", "cocycle", "--perturb", "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["pass"], false);
    assert!(v["counterexample"]["x"].is_array());
    let out = run(&["verify-all", "--grid", "config", "--config", "small_grid.json", "--perturb"]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["counterexample"]["subcheck"], "cover");
}

#[test]
fn seeded_runs_repeat() {
    let a = run(&["verify-all", "--grid", "config", "--config", "small_grid.json", "--seed", "7"]);
    let b = run(&["verify-all", "--grid", "config", "--config", "small_grid.json", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
