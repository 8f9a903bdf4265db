use std::process::{Command, Output};

use lmec::format::parse_codebook;
use lmec::CodeMode;

fn lmec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lmec"))
        .args(args)
        .env_remove("LMEC_ORACLE_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn construct_to_file(args: &[&str]) -> (lmec::Codebook, String) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("code.txt");
    let mut full = vec!["construct"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", path.to_str().unwrap()]);
    let o = lmec(&full);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&path).unwrap();
    (parse_codebook(&text).unwrap(), stdout(&o))
}

#[test]
fn construct_sizes() {
    let (vt, out) = construct_to_file(&[
        "--mode", "vt", "--q", "4", "--ell", "1", "--n", "3", "--r", "0",
    ]);
    assert_eq!(vt.len(), 4);
    assert_eq!(vt.mode(), CodeMode::Uec);
    assert_eq!(out, "size 4\nvalid true\n");

    let (aec, _) = construct_to_file(&["--mode", "aec", "--q", "7", "--ell", "2", "--n", "3"]);
    assert_eq!(aec.len(), 27);

    let (ued, _) = construct_to_file(&[
        "--mode", "ued", "--q", "5", "--ell", "1", "--n", "3", "--a", "0",
    ]);
    assert_eq!(ued.len(), 32);
    assert!(ued.satisfies_mode());
}

#[test]
fn constructed_file_round_trips() {
    let o = lmec(&[
        "construct",
        "--mode",
        "uec",
        "--q",
        "5",
        "--ell",
        "1",
        "--n",
        "3",
        "--construction",
        "tail",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    let book = parse_codebook(&text).unwrap();
    assert_eq!(lmec::format::write_codebook(&book), text);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tail.txt");
    std::fs::write(&path, &text).unwrap();
    let o = lmec(&["verify", "--code", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).ends_with("valid\n"));
}

#[test]
fn bad_flag_combinations_are_usage_errors() {
    let o = lmec(&[
        "construct",
        "--mode",
        "aec",
        "--q",
        "4",
        "--ell",
        "1",
        "--n",
        "2",
        "--r",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = lmec(&[
        "construct",
        "--mode",
        "vt",
        "--q",
        "4",
        "--ell",
        "1",
        "--n",
        "2",
        "--coeffs",
        "1,2",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = lmec(&[
        "construct",
        "--mode",
        "vt",
        "--q",
        "2",
        "--ell",
        "1",
        "--n",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = lmec(&["count", "--q", "5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn decode_trace() {
    let o = lmec(&[
        "decode",
        "--code",
        "vt:q=4,l=1,n=3,a=7",
        "--received",
        "2 2 1",
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "decoded 1 1 1\nerror 1 1 0 up\n");

    let o = lmec(&[
        "decode",
        "--code",
        "vt:q=4,l=1,n=3,a=7",
        "--received",
        "1 1 1",
    ]);
    assert_eq!(stdout(&o), "decoded 1 1 1\nerror 0 0 0 up\n");

    let o = lmec(&[
        "decode",
        "--code",
        "vt:q=4,l=1,n=3,a=7",
        "--received",
        "3 3 3",
    ]);
    assert_eq!(o.status.code(), Some(3));

    let o = lmec(&[
        "decode",
        "--code",
        "vt:q=4,l=1,n=3,a=7",
        "--received",
        "1 x 1",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn decode_from_file_uses_search() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("aec.txt");
    let o = lmec(&[
        "construct",
        "--mode",
        "aec",
        "--q",
        "5",
        "--ell",
        "1",
        "--n",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let o = lmec(&[
        "decode",
        "--code",
        path.to_str().unwrap(),
        "--received",
        "1 3",
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "decoded 0 2\nerror 1 1 up\n");
}

#[test]
fn count_max() {
    let o = lmec(&["count", "--q", "5", "--ell", "1", "--n", "4", "--max"]);
    assert_eq!(stdout(&o), "20 at offsets -6 -2 2 6\n");
    let o = lmec(&["count", "--q", "4", "--ell", "1", "--n", "3", "--r", "0"]);
    assert_eq!(stdout(&o), "4\n");
}

#[test]
fn oracle_and_cap() {
    let o = lmec(&[
        "oracle", "--mode", "uec", "--q", "4", "--ell", "1", "--n", "3",
    ]);
    assert_eq!(stdout(&o), "8\n");

    let o = lmec(&[
        "oracle", "--mode", "aec", "--q", "4", "--ell", "1", "--n", "3", "--cap", "10",
    ]);
    assert_eq!(o.status.code(), Some(4));

    let o = Command::new(env!("CARGO_BIN_EXE_lmec"))
        .args([
            "oracle", "--mode", "aec", "--q", "4", "--ell", "1", "--n", "3",
        ])
        .env("LMEC_ORACLE_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn window_output() {
    let o = lmec(&["window", "--q", "8", "--ell", "1", "--n", "3"]);
    assert_eq!(stdout(&o), "[-3, 3] divisible\n");
    let o = lmec(&["window", "--q", "7", "--ell", "2", "--n", "3"]);
    assert_eq!(stdout(&o), "not applicable\n");
}

#[test]
fn simulate_is_deterministic() {
    let args = [
        "simulate",
        "--code",
        "uec:q=5,l=1,n=4",
        "--seed",
        "7",
        "--trials",
        "300",
        "--format",
        "json",
    ];
    let a = lmec(&args);
    let b = lmec(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["failed"], 0);
}

#[test]
fn report_json_schema() {
    let o = lmec(&[
        "report", "--q", "4", "--ell", "1", "--n", "2", "--format", "json",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    for key in ["params", "bounds", "sizes", "checks"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["bounds"]["aec_optimal"], "4");
}

#[test]
fn verify_rejects_bad_code() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    std::fs::write(&path, "q=3 l=1 n=2 mode=aec\n0 0\n1 1\n").unwrap();
    let o = lmec(&["verify", "--code", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(5));
}
