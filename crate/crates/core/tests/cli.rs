use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn kh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kh")).args(args).env("KH_THREADS", "2").output().expect("kh runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = kh(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

const TREFOIL: &str = "b=2; s1 s1 s1";

#[test]
fn jones_and_bracket() {
    assert_eq!(ok(&["jones", "--braid", TREFOIL]).trim(), "-q^9 + q^5 + q^3 + q");
    assert_eq!(ok(&["bracket", "--braid", "b=1;"]).trim(), "q + q^-1");
    let j: serde_json::Value = serde_json::from_str(&ok(&["--json", "jones", "--braid", TREFOIL])).unwrap();
    assert_eq!(j["terms"], serde_json::json!([[1, 1], [3, 1], [5, 1], [9, -1]]));
}

#[test]
fn compute_tables() {
    let table = ok(&["compute", "--braid", TREFOIL]);
    assert_eq!(table, "(0,1): Z\n(0,3): Z\n(2,5): Z\n(3,7): Z/2\n(3,9): Z\n");
    assert_eq!(ok(&["compute", "--braid", TREFOIL, "--engine", "both"]), table);
    assert_eq!(ok(&["compute", "--braid", TREFOIL, "--engine", "scan"]), table);
    assert_eq!(ok(&["compute", "--pd", "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)", "--ring", "F2"]).lines().count(), 6);
    assert!(ok(&["compute", "--theory", "lee", "--braid", TREFOIL]).contains("Q^2"));
    assert!(ok(&["reduced", "--braid", TREFOIL]).contains("(3,8): Z"));
}

#[test]
fn knot_invariants() {
    assert!(ok(&["s", "--braid", TREFOIL]).starts_with("s = 2\ng4_lower_bound = 1"));
    assert_eq!(ok(&["ngbound", "--braid", "b=2; S1 S1 S1"]).trim(), "tb <= -6");
    assert!(ok(&["kappa", "--braid", "b=2; S1", "--method", "both"]).contains("kappa = 2"));
    assert!(ok(&["psi", "--braid", TREFOIL]).contains("psi = nonzero"));
    assert_eq!(ok(&["annular", "--braid", "b=1;"]), "(0,-1,-1): Z\n(0,1,1): Z\n");
    assert!(ok(&["ss", "--from", "kh", "--to", "bn", "--braid", TREFOIL]).contains("E2: total 2"));
    assert!(ok(&["ss", "--from", "akh", "--to", "kh", "--braid", TREFOIL]).contains("collapsed"));
}

#[test]
fn input_errors_exit_2() {
    for args in [
        vec!["jones", "--braid", "b=2; s3"],
        vec!["jones", "--braid", "b=2; s1 q1"],
        vec!["jones", "--pd", "X(1,2,3)"],
        vec!["s", "--braid", "b=2; s1 s1"],
        vec!["compute", "--theory", "bn", "--engine", "scan", "--braid", TREFOIL],
        vec!["annular", "--pd", "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"],
        vec!["jones", "--input", "/nonexistent/file.knot"],
    ] {
        let o = kh(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
    let o = kh(&["jones", "--braid", "b=2; s1 q1"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("col"));
}

#[test]
fn output_is_deterministic() {
    let a = kh(&["--json", "compute", "--braid", "b=3; s1 S2 s1 S2"]);
    let b = Command::new(env!("CARGO_BIN_EXE_kh")).args(["--json", "compute", "--braid", "b=3; s1 S2 s1 S2"]).env("KH_THREADS", "1").output().unwrap();
    assert_eq!(a.stdout, b.stdout);
}

fn scratch(name: &str) -> std::path::PathBuf {
    let p = std::env::temp_dir().join(format!("kh-cli-{}-{name}", std::process::id()));
    let _ = fs::remove_dir_all(&p);
    fs::create_dir_all(&p).unwrap();
    p
}

#[test]
fn shipped_corpus_passes() {
    let out = scratch("out");
    let corpus = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");
    let o = kh(&["corpus", corpus.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let n = fs::read_dir(&corpus).unwrap().count();
    assert_eq!(fs::read_dir(&out).unwrap().count(), n);
    let j: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("trefoil_rh.json")).unwrap()).unwrap();
    assert_eq!(j["invariants"]["s"], serde_json::json!("2"));
    assert_eq!(j["mismatches"], serde_json::json!([]));
}

#[test]
fn empty_corpus_is_fine() {
    let dir = scratch("empty");
    let o = kh(&["corpus", dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn corrupted_file_does_not_stop_the_run() {
    let dir = scratch("bad");
    fs::write(dir.join("good.knot"), "b=2; s1 s1 s1\n#! s = 2\n").unwrap();
    fs::write(dir.join("broken.knot"), "b=2; s9\n").unwrap();
    let o = kh(&["corpus", dir.to_str().unwrap()]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(2));
    assert!(text.contains("PASS  good.knot"));
    assert!(text.contains("ERROR broken.knot (exit 2)"));
    fs::write(dir.join("wrong.knot"), "b=2; s1 s1 s1\n#! s = 4\n").unwrap();
    let o = kh(&["corpus", dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("s: expected 4, got 2"));
}
