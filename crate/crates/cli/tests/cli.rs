//! End-to-end runs of the `miqp` binary: exit codes, file round trips and
//! agreement between `solve` and `oracle`.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn miqp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_miqp"))
        .args(args)
        .env_remove("MIQP_THREADS")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// `-x^2 + 1 <= 0` with `x >= 0`, integral.
const CASE1: &str = "1 1\n-1\n0\n1\n1\n-1\n0\n";
/// `x^2 + 1 <= 0`: never satisfied.
const NEVER: &str = "1 1\n1\n0\n1\n0\n";

#[test]
fn solve_then_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(&dir, "case1.txt", CASE1);
    let cert = dir.path().join("case1.cert");
    let out = miqp(&["solve", "--instance", s(&inst), "--out", s(&cert)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(&cert).unwrap();
    assert!(text.contains("x 1\n"), "{text}");
    assert!(text.contains("case1 lambda=1"), "{text}");
    let out = miqp(&["verify", "--instance", s(&inst), "--cert", s(&cert)]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("VALID"));
}

#[test]
fn tampered_certificate_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(&dir, "case1.txt", CASE1);
    let cert = write(&dir, "bad.cert", "# miqp certificate\nn 1\nx 0\ntrace orthant=none case1 lambda=1\nsize 3\n");
    let out = miqp(&["verify", "--instance", s(&inst), "--cert", s(&cert)]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("INVALID"));
    let frac = write(&dir, "frac.cert", "# miqp certificate\nn 1\nx 3/2\ntrace orthant=none case1 lambda=2\nsize 5\n");
    assert_eq!(code(&miqp(&["verify", "--instance", s(&inst), "--cert", s(&frac)])), 1);
}

#[test]
fn wrong_dimension_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(&dir, "case1.txt", CASE1);
    let cert = write(&dir, "wide.cert", "# miqp certificate\nn 2\nx 1 1\ntrace orthant=none case1 lambda=1\nsize 9\n");
    let out = miqp(&["verify", "--instance", s(&inst), "--cert", s(&cert)]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
}

#[test]
fn infeasible_instance_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(&dir, "never.txt", NEVER);
    let out = miqp(&["solve", "--instance", s(&inst)]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout(&out).trim(), "INFEASIBLE");
    assert_eq!(code(&miqp(&["oracle", "--instance", s(&inst), "--box", "3"])), 1);
}

#[test]
fn malformed_input_reports_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(&dir, "asym.txt", "2 2\n1 2\n3 1\n0 0\n0\n0\n");
    let out = miqp(&["solve", "--instance", s(&inst)]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("line 2"), "{err}");
    assert_eq!(code(&miqp(&["solve", "--instance", "/nonexistent/instance"])), 2);
    assert_eq!(code(&miqp(&["frobnicate"])), 2);
}

#[test]
fn maxcut_generation_matches_the_exhaustive_cut() {
    let dir = tempfile::tempdir().unwrap();
    // 4-cycle: the maximum cut has all 4 edges
    for (k, expected) in [(4, 0), (5, 1)] {
        let inst = dir.path().join(format!("c4-{k}.txt"));
        let k = k.to_string();
        let gen = miqp(&["gen-maxcut", "--edges", "0-1,1-2,2-3,3-0", "--k", &k, "--out", s(&inst)]);
        assert_eq!(code(&gen), 0);
        assert_eq!(code(&miqp(&["solve", "--instance", s(&inst)])), expected);
        assert_eq!(code(&miqp(&["oracle", "--instance", s(&inst), "--box", "1"])), expected);
    }
    assert_eq!(code(&miqp(&["gen-maxcut", "--edges", "0-0", "--k", "1"])), 2);
}

#[test]
fn solve_and_oracle_agree_on_unbounded_pure_integer_instances() {
    let dir = tempfile::tempdir().unwrap();
    // x1^2 - 2 x2 + d <= 0 over x >= 0: feasible for every d (x2 large)
    // x1^2 + x2^2 - 2 <= 0 over R^2: feasible at (1, 1)
    // 2 x1 - 2 x2 = 1 over integers: infeasible parity, fenced by two rows
    let cases = [
        ("2 2\n1 0\n0 0\n0 -2\n7\n2\n-1 0\n0 -1\n0 0\n", 0),
        ("2 2\n1 0\n0 1\n0 0\n-2\n0\n", 0),
        ("2 2\n0 0\n0 0\n0 0\n0\n2\n2 -2\n-2 2\n1 -1\n", 1),
    ];
    for (i, (text, expected)) in cases.iter().enumerate() {
        let inst = write(&dir, &format!("u{i}.txt"), text);
        let solve = miqp(&["solve", "--instance", s(&inst)]);
        assert_eq!(code(&solve), *expected, "case {i}: {}", stdout(&solve));
        let oracle = miqp(&["oracle", "--instance", s(&inst), "--box", "6"]);
        assert_eq!(code(&oracle), *expected, "case {i}: {}", stdout(&oracle));
    }
}

#[test]
fn decompose_lists_fibers_and_thread_count_is_honored() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(&dir, "case1.txt", CASE1);
    let out = miqp(&["decompose", "--instance", s(&inst)]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("fiber 0"), "{}", stdout(&out));
    let seq = miqp(&["--threads", "1", "solve", "--instance", s(&inst)]);
    let par = miqp(&["solve", "--instance", s(&inst)]);
    assert_eq!(code(&seq), 0);
    assert_eq!(seq.stdout, par.stdout);
}
