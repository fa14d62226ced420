use std::path::Path;
use std::process::Command;

use freivalds::format::parse_matrix;
use freivalds::{recheck_witness, Vector};
use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn freivalds(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_freivalds"))
        .args(args)
        .output()
        .expect("spawn");
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).unwrap_or_else(|e| panic!("{e}: {s}"))
}

fn gen(dir: &Path, n: usize, ring: &str, mode: &str, seed: u64) -> Value {
    let out = dir.to_str().unwrap();
    let n = n.to_string();
    let seed = seed.to_string();
    let run = freivalds(&["gen", "--n", &n, "--ring", ring, "--mode", mode, "--seed", &seed, "--out", out]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    json(&run.stdout)
}

fn files(dir: &Path) -> [String; 6] {
    let p = |f: &str| dir.join(f).to_str().unwrap().to_string();
    [
        "--a".into(),
        p("A.freimat"),
        "--b".into(),
        p("B.freimat"),
        "--c".into(),
        p("C.freimat"),
    ]
}

fn with(dir: &Path, cmd: &str, extra: &[&str]) -> Run {
    let f = files(dir);
    let mut args: Vec<&str> = vec![cmd];
    args.extend(f.iter().map(String::as_str));
    args.extend_from_slice(extra);
    freivalds(&args)
}

#[test]
fn equal_instance_accepts_with_bound() {
    let dir = tempfile::tempdir().unwrap();
    gen(dir.path(), 12, "int64", "equal", 3);
    let run = with(dir.path(), "verify", &["-k", "20", "--dist", "u01", "--seed", "7"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let v = json(&run.stdout);
    assert_eq!(v["outcome"], "accept");
    assert_eq!(v["error_bound"], "1/1048576");
}

#[test]
fn single_column_instance_rejects_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let g = gen(dir.path(), 8, "int64", "single-column", 1);
    assert_eq!(g["profile"]["y_size"], 1);
    let sidecar = json(&std::fs::read_to_string(dir.path().join("profile.json")).unwrap());
    assert_eq!(sidecar["y_size"], 1);

    let run = with(dir.path(), "verify", &["-k", "20", "--dist", "u01", "--seed", "7"]);
    assert_eq!(run.code, 1, "{}", run.stderr);
    let v = json(&run.stdout);
    assert_eq!(v["outcome"], "reject");
    let witness_path = v["witness_file"].as_str().unwrap();
    let w = parse_matrix(&std::fs::read_to_string(witness_path).unwrap()).unwrap();
    assert_eq!((w.rows(), w.cols()), (8, 1));
    let witness = Vector::new(w.ring(), w.as_slice().to_vec()).unwrap();
    let load = |f: &str| parse_matrix(&std::fs::read_to_string(dir.path().join(f)).unwrap()).unwrap();
    let row = v["mismatch_row"].as_u64().unwrap() as usize;
    assert!(recheck_witness(&load("A.freimat"), &load("B.freimat"), &load("C.freimat"), &witness, row).unwrap());
}

#[test]
fn mismatched_dimensions_exit_two() {
    let small = tempfile::tempdir().unwrap();
    let large = tempfile::tempdir().unwrap();
    gen(small.path(), 4, "int64", "equal", 0);
    gen(large.path(), 5, "int64", "equal", 0);
    let a = small.path().join("A.freimat");
    let b = large.path().join("B.freimat");
    let c = small.path().join("C.freimat");
    let run = freivalds(&[
        "verify",
        "--a",
        a.to_str().unwrap(),
        "--b",
        b.to_str().unwrap(),
        "--c",
        c.to_str().unwrap(),
    ]);
    assert_eq!(run.code, 2);
    assert!(run.stdout.is_empty());
    assert_eq!(json(&run.stderr)["error"]["kind"], "DimensionMismatch");
}

#[test]
fn other_error_classes_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    gen(dir.path(), 4, "zp 5", "equal", 0);
    let run = with(dir.path(), "verify", &["--dist", "bern:1/0"]);
    assert_eq!(run.code, 2);
    let run = with(dir.path(), "verify", &["--dist", "usup:0,9"]);
    assert_eq!(json(&run.stderr)["error"]["kind"], "ValueOutsideRing");
    let run = with(dir.path(), "analyze", &["--exact"]);
    assert_eq!(json(&run.stderr)["error"]["kind"], "InstanceActuallyEqual");
    let run = with(dir.path(), "analyze", &[]);
    assert_eq!(json(&run.stderr)["error"]["kind"], "Usage");

    std::fs::write(dir.path().join("C.freimat"), "freimat 1\n4 4 zp 5\n0 0 0 5\n").unwrap();
    let run = with(dir.path(), "verify", &[]);
    assert_eq!(run.code, 2);
    assert_eq!(json(&run.stderr)["error"]["kind"], "ParseError");

    let run = freivalds(&["verify", "--a", "/nonexistent/A", "--b", "x", "--c", "y"]);
    assert_eq!(json(&run.stderr)["error"]["kind"], "Io");
    let run = freivalds(&["frobnicate"]);
    assert_eq!(run.code, 2);
    assert_eq!(json(&run.stderr)["error"]["kind"], "Usage");
    assert_eq!(freivalds(&["--help"]).code, 0);
}

#[test]
fn field_instances_are_reduced() {
    let dir = tempfile::tempdir().unwrap();
    gen(dir.path(), 6, "zp 5", "dense-random", 9);
    for f in ["A.freimat", "B.freimat", "C.freimat"] {
        let text = std::fs::read_to_string(dir.path().join(f)).unwrap();
        assert!(text.starts_with("freimat 1\n6 6 zp 5\n"));
        for line in text.lines().skip(2) {
            assert!(line.split(' ').all(|v| (0..5).contains(&v.parse::<i64>().unwrap())));
        }
    }
}

#[test]
fn exact_analysis_values() {
    let dir = tempfile::tempdir().unwrap();
    gen(dir.path(), 8, "int64", "single-column", 5);
    let run = with(dir.path(), "analyze", &["--dist", "u01", "--exact"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let v = json(&run.stdout);
    assert_eq!(v["exact_fap"], "1/2");
    assert_eq!(v["bound"], "1/2");
    assert_eq!(v["profile"]["y_size"], 1);
    assert_eq!(v["profile"]["mode"], "single-column");
    assert!(v["empirical"].is_null());

    let run = with(dir.path(), "analyze", &["--dist", "bern:1/10", "--exact", "--trials", "20000", "--seed", "4"]);
    let v = json(&run.stdout);
    assert_eq!(v["exact_fap"], "9/10");
    assert_eq!(v["empirical"]["trials"], 20000);
    let lo = v["empirical"]["ci99"][0].as_f64().unwrap();
    let hi = v["empirical"]["ci99"][1].as_f64().unwrap();
    assert!(lo <= 0.9 && 0.9 <= hi);
}

#[test]
fn exact_analysis_over_budget() {
    let dir = tempfile::tempdir().unwrap();
    gen(dir.path(), 40, "int64", "single-column", 0);
    let run = with(dir.path(), "analyze", &["--dist", "u01", "--exact"]);
    assert_eq!(run.code, 2);
    let e = json(&run.stderr);
    assert_eq!(e["error"]["kind"], "BudgetExceeded");
    assert_eq!(e["error"]["suggested_max_n"], 24);
}

#[test]
fn rank_one_columns_flag() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let run = freivalds(&["gen", "--n", "7", "--mode", "rank-one", "--columns", "3", "--seed", "2", "--out", out]);
    assert_eq!(run.code, 0);
    assert_eq!(json(&run.stdout)["profile"]["y_size"], 3);
}

#[test]
fn bench_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("bench.csv");
    let run = freivalds(&["bench", "--sizes", "8,16", "-k", "2", "--repeats", "1", "--csv", csv.to_str().unwrap()]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let v = json(&run.stdout);
    assert_eq!(v["records"].as_array().unwrap().len(), 4);
    let text = std::fs::read_to_string(csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,method,k,wall_ms,scalar_ops");
    assert!(lines[1].starts_with("8,deterministic,,") && lines[1].ends_with(",512"));
    assert!(lines[4].starts_with("16,freivalds,2,") && lines[4].ends_with(",1536"));
}

#[test]
fn identical_flags_give_identical_output() {
    let d1 = tempfile::tempdir().unwrap();
    let g1 = gen(d1.path(), 6, "zp 5", "rank-one", 11);
    let g2 = gen(d1.path(), 6, "zp 5", "rank-one", 11);
    assert_eq!(g1, g2);
    let args = ["-k", "3", "--dist", "field", "--seed", "5"];
    let v1 = with(d1.path(), "verify", &args);
    let v2 = with(d1.path(), "verify", &args);
    assert_eq!(v1.stdout, v2.stdout);
    let args = ["--dist", "usup:1,2,3", "--exact", "--trials", "1000", "--seed", "8"];
    let a1 = with(d1.path(), "analyze", &args);
    let a2 = with(d1.path(), "analyze", &args);
    assert_eq!(a1.code, 0, "{}", a1.stderr);
    assert_eq!(a1.stdout, a2.stdout);
}
