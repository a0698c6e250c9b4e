use std::path::Path;
use std::process::{Command, Output};

use hfree_core::io::load_family;
use serde_json::Value;
use sha2::{Digest, Sha256};

fn hfree(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hfree")).current_dir(dir).args(args).output().expect("binary runs")
}

fn hfree_threads(dir: &Path, threads: &str, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hfree"))
        .current_dir(dir)
        .env("HFREE_THREADS", threads)
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(bytes: &[u8]) -> Value {
    serde_json::from_slice(bytes).expect("valid JSON")
}

#[test]
fn exit_codes_follow_outcome() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(hfree(dir.path(), &["construct", "fdk", "--m", "4", "--d", "1,2,3", "--out", "f.json"]).status.code(), Some(0));
    assert_eq!(hfree(dir.path(), &["verify", "pattern", "--family", "f.json", "--b", "3,2,3"]).status.code(), Some(0));
    assert_eq!(hfree(dir.path(), &["verify", "pattern", "--family", "f.json", "--b", "1,1,1"]).status.code(), Some(1));
    assert_eq!(hfree(dir.path(), &["bounds", "eval", "--nonsense"]).status.code(), Some(2));
    assert_eq!(hfree(dir.path(), &["analyze", "--family", "missing.json"]).status.code(), Some(2));
    assert_eq!(hfree(dir.path(), &["construct", "plane", "--q", "9"]).status.code(), Some(2));
}

#[test]
fn manifest_records_output_digest() {
    let dir = tempfile::tempdir().unwrap();
    let out = hfree(dir.path(), &["construct", "sunflower", "--m", "5", "--r", "3", "--core", "1", "--out", "s.json"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let bytes = std::fs::read(dir.path().join("s.json")).unwrap();
    let manifest = json(&std::fs::read(dir.path().join("s.json.manifest.json")).unwrap());
    assert_eq!(manifest["tool"], "hfree");
    assert_eq!(manifest["outputs"][0]["path"], "s.json");
    assert_eq!(manifest["outputs"][0]["sha256"], hex::encode(Sha256::digest(&bytes)));
    let f = load_family(&dir.path().join("s.json")).unwrap();
    assert_eq!(f.len(), 5);
    assert_eq!(f.uniformity(), Some(3));
}

#[test]
fn seeded_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["construct", "random", "--m", "12", "--vertices", "9", "--min-size", "2", "--max-size", "4", "--seed", "42"];
    let a = hfree(dir.path(), &args);
    let b = hfree(dir.path(), &args);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let other = hfree(dir.path(), &["construct", "random", "--m", "12", "--vertices", "9", "--min-size", "2", "--max-size", "4", "--seed", "43"]);
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn thread_count_does_not_change_results() {
    let dir = tempfile::tempdir().unwrap();
    assert!(hfree(dir.path(), &["construct", "plane", "--q", "3", "--emit", "dual", "--out", "d.json"]).status.success());
    let args = ["oracle", "ex", "--family", "d.json", "--b", "5,3,1"];
    let one = hfree_threads(dir.path(), "1", &args);
    let four = hfree_threads(dir.path(), "4", &args);
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(json(&one.stdout)["value"], 2);
    let grid = ["bounds", "region", "--m", "100", "--b1", "1:1000", "--b2", "1:1000", "--log-step", "1.5"];
    assert_eq!(hfree_threads(dir.path(), "1", &grid).stdout, hfree_threads(dir.path(), "3", &grid).stdout);
}

#[test]
fn plane_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    assert!(hfree(dir.path(), &["construct", "plane", "--q", "3", "--emit", "design", "--out", "p.json"]).status.success());
    let out = hfree(dir.path(), &["verify", "design", "--design", "p.json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out.stdout)["result"], true);
    let deleted = hfree(dir.path(), &["verify", "design", "--design", "p.json", "--delete-circle", "0"]);
    assert_eq!(deleted.status.code(), Some(1));
}

#[test]
fn compute_commands_match_known_values() {
    let dir = tempfile::tempdir().unwrap();
    let d = json(&hfree(dir.path(), &["compute", "dfromb", "--b", "5,1,0", "--m", "10"]).stdout);
    assert_eq!(d["feasible"], false);
    let a = json(&hfree(dir.path(), &["compute", "afromd", "--d", "1,2,3", "--m", "4"]).stdout);
    assert_eq!(a["a"], serde_json::json!([10, 5, 3]));
    let c = json(&hfree(dir.path(), &["compute", "binom", "--x", "-3", "--y", "2"]).stdout);
    assert_eq!(c["value"], "6");
}
