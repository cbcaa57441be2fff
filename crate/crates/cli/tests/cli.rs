use std::fs;
use std::process::Command;

use serde_json::Value;
use ucycle_cli::{run, EXIT_FAILURE, EXIT_INCONCLUSIVE, EXIT_OK, EXIT_USAGE};

fn ucycle(args: &[&str]) -> ucycle_cli::Outcome {
    run(std::iter::once("ucycle").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = ucycle(&full);
    let doc = serde_json::from_str(&out.stdout).unwrap_or(Value::Null);
    (out.code, doc)
}

#[test]
fn verify_reference_string() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cycle.txt");
    fs::write(&path, "021210210210102021102210210\n").unwrap();
    let p = path.to_str().unwrap();
    let out = ucycle(&["verify", "--file", p, "--q", "3", "--n", "3", "--set", "0,3,6"]);
    assert_eq!(out.code, EXIT_OK, "{out:?}");
    assert_eq!(out.stdout, "complete\n");
    let out = ucycle(&["verify", "--file", p, "--q", "3", "--n", "3", "--set", "0,1,2"]);
    assert_eq!(out.code, EXIT_FAILURE);
    assert!(out.stdout.starts_with("incomplete"));
}

#[test]
fn search_pair_with_half_square_is_invalid() {
    let (code, doc) = json(&["search", "--q", "2", "--n", "2", "--set", "0,2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["verdict"], "invalid");
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["seed"], 0);
}

#[test]
fn search_writes_verified_witness() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("w.txt");
    let o = out_path.to_str().unwrap();
    let out = ucycle(&["search", "--q", "2", "--n", "3", "--set", "0,1,2", "--out", o]);
    assert_eq!(out.code, EXIT_OK);
    let check = ucycle(&["verify", "--file", o, "--q", "2", "--n", "3", "--set", "0,1,2"]);
    assert_eq!(check.code, EXIT_OK);
}

#[test]
fn budget_exhaustion_is_inconclusive() {
    let out = ucycle(&["--budget-nodes", "1", "search", "--q", "2", "--n", "5", "--set", "0,1,2,3,4"]);
    assert_eq!(out.code, EXIT_INCONCLUSIVE);
    assert!(out.stdout.is_empty());
}

#[test]
fn usage_errors() {
    assert_eq!(ucycle(&["search", "--q", "2", "--n", "3", "--set", "0,1"]).code, EXIT_USAGE);
    assert_eq!(ucycle(&["search", "--q", "2", "--n", "3", "--set", "a,b"]).code, EXIT_USAGE);
    assert_eq!(ucycle(&["frobnicate"]).code, EXIT_USAGE);
    assert_eq!(ucycle(&["atlas", "--q", "2", "--n", "3", "--size", "2"]).code, EXIT_USAGE);
    assert_eq!(ucycle(&["classify", "--q", "6", "--n", "2", "--set", "0,1"]).code, EXIT_USAGE);
    assert_eq!(ucycle(&["decompose", "--n", "3", "--d", "4"]).code, EXIT_USAGE);
    assert_eq!(ucycle(&["--help"]).code, EXIT_OK);
}

#[test]
fn atlas_matches_golden_and_resumes() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("atlas.tsv");
    let ck = dir.path().join("ck.tsv");
    let (o, c) = (out_path.to_str().unwrap(), ck.to_str().unwrap());
    let first = ucycle(&["atlas", "--q", "3", "--n", "3", "--size", "3", "--out", o, "--checkpoint", c]);
    assert_eq!(first.code, EXIT_OK, "{first:?}");
    let full = fs::read_to_string(&out_path).unwrap();
    let diff = ucycle(&["diff-golden", "--atlas", o, "--table", "obs1"]);
    assert_eq!(diff.code, EXIT_OK, "{diff:?}");

    // Keep the header and two decided classes plus a torn line, then resume.
    let text = fs::read_to_string(&ck).unwrap();
    let kept: Vec<&str> = text.lines().take(3).collect();
    fs::write(&ck, kept.join("\n") + "\n0,1,").unwrap();
    fs::remove_file(&out_path).unwrap();
    let second = ucycle(&["atlas", "--q", "3", "--n", "3", "--size", "3", "--out", o, "--checkpoint", c]);
    assert_eq!(second.code, EXIT_OK, "{second:?}");
    assert_eq!(fs::read_to_string(&out_path).unwrap(), full);

    let mismatched = ucycle(&["atlas", "--q", "2", "--n", "3", "--size", "3", "--checkpoint", c]);
    assert_eq!(mismatched.code, EXIT_FAILURE);
}

#[test]
fn diff_golden_rejects_corrupted_atlas() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("atlas.tsv");
    let p = path.to_str().unwrap();
    assert_eq!(ucycle(&["atlas", "--q", "2", "--n", "4", "--size", "4", "--out", p]).code, EXIT_OK);
    assert_eq!(ucycle(&["diff-golden", "--atlas", p, "--table", "obs2"]).code, EXIT_OK);
    // Against a table for other parameters.
    assert_eq!(ucycle(&["diff-golden", "--atlas", p, "--table", "obs1"]).code, EXIT_FAILURE);

    let text = fs::read_to_string(&path).unwrap();
    let flipped = text.replacen("\tvalid", "\tinvalid", 1);
    fs::write(&path, flipped).unwrap();
    let (code, doc) = json(&["diff-golden", "--atlas", p, "--table", "obs2"]);
    assert_eq!(code, EXIT_FAILURE);
    assert_eq!(doc["missing"].as_array().unwrap().len(), 1);

    fs::write(&path, "0,1,2\tmaybe\n").unwrap();
    assert_eq!(ucycle(&["diff-golden", "--atlas", p, "--table", "obs2"]).code, EXIT_FAILURE);
    assert_eq!(ucycle(&["diff-golden", "--atlas", p, "--table", "obs9"]).code, EXIT_USAGE);
}

#[test]
fn constructions_verify() {
    let (code, doc) = json(&["gen-ap", "--q", "3", "--n", "3", "--seed-cycle", "001122021"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["verified"], true);
    assert_eq!(doc["cycle"].as_str().unwrap().len(), 27);

    let dir = tempfile::tempdir().unwrap();
    let base = dir.path().join("ap.txt");
    let doubled = dir.path().join("ap2.txt");
    let (b, d) = (base.to_str().unwrap(), doubled.to_str().unwrap());
    assert_eq!(ucycle(&["search", "--q", "2", "--n", "3", "--set", "0,1,2", "--out", b]).code, EXIT_OK);
    let out = ucycle(&["double-ap3", "--file", b, "--q", "2", "--d", "1", "--out", d]);
    assert_eq!(out.code, EXIT_OK, "{out:?}");
    assert_eq!(ucycle(&["verify", "--file", d, "--q", "4", "--n", "3", "--set", "0,8,16"]).code, EXIT_OK);
    // Input that is not an AP(3, 2)-cycle is refused and nothing is written.
    let refused = dir.path().join("no.txt");
    let out = ucycle(&["double-ap3", "--file", b, "--q", "2", "--d", "3", "--out", refused.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_FAILURE);
    assert!(!refused.exists());

    let (code, doc) = json(&["gen-reduced", "--q", "2", "--n", "4", "--set", "0,1,3,7"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["cycle"].as_str().unwrap().len(), 15);
}

#[test]
fn classify_reports_criteria() {
    let (code, doc) = json(&["classify", "--q", "3", "--n", "2", "--set", "0,4"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["verdict"], "exceptional");
    assert_eq!(doc["pair_criterion_ordinary"], false);
    let (_, doc) = json(&["classify", "--q", "2", "--n", "3", "--set", "0,1,2"]);
    assert_eq!(doc["verdict"], "ordinary");
    assert_eq!(doc["triple_criterion"]["exceptional"], false);
}

#[test]
fn decompose_outcomes() {
    let (code, doc) = json(&["decompose", "--n", "4", "--d", "8", "--emit-chi"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["status"], "verified");
    assert_eq!(doc["trails"].as_array().unwrap().len(), 2);
    assert_eq!(doc["chi"].as_str().unwrap().len(), 16);
    let (code, doc) = json(&["decompose", "--n", "4", "--d", "2"]);
    assert_eq!(code, EXIT_FAILURE);
    assert_eq!(doc["status"], "impossible");
}

#[test]
fn approx_and_janson() {
    let (code, doc) = json(&["--seed", "7", "approx", "--q", "2", "--n", "6", "--set", "0,1,2,3,4,5", "--type", "1"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["seed"], 7);
    assert_eq!(doc["verified"], true);
    let (code, doc) = json(&["approx", "--q", "2", "--n", "6", "--set", "0,2,5,7,8,11", "--type", "2", "--m", "100"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["length"], 100);
    let out = ucycle(&["janson", "--mu", "4", "--Delta", "2", "--delta", "1"]);
    assert_eq!(out.code, EXIT_OK);
    let v: f64 = out.stdout.trim().parse().unwrap();
    assert!((v - (-(4.0f64 / 6.0)).exp()).abs() < 1e-12);
    assert_eq!(ucycle(&["janson", "--mu", "-1", "--Delta", "2", "--delta", "1"]).code, EXIT_USAGE);
}

#[test]
fn binary_exit_codes() {
    let exe = env!("CARGO_BIN_EXE_ucycle");
    let out = Command::new(exe).args(["search", "--q", "2", "--n", "2", "--set", "0,2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    assert_eq!(out.stdout, b"invalid\n");
    let status = Command::new(exe).args(["search", "--q", "2"]).output().unwrap();
    assert_eq!(status.status.code(), Some(EXIT_USAGE));
    let out = Command::new(exe)
        .env("UCYCLE_BUDGET_NODES", "1")
        .args(["search", "--q", "2", "--n", "5", "--set", "0,1,2,3,4"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_INCONCLUSIVE));
}

#[test]
fn field_cache_is_used() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().to_str().unwrap();
    let first = ucycle(&["--cache-dir", c, "gen-reduced", "--q", "2", "--n", "3", "--set", "0,1,2"]);
    assert_eq!(first.code, EXIT_OK);
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
    let second = ucycle(&["--cache-dir", c, "gen-reduced", "--q", "2", "--n", "3", "--set", "0,1,2"]);
    assert_eq!(second, first);
}
