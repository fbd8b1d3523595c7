use std::process::Command;

use nhramsey::cli::{deterministic_part, run, EXIT_BUDGET, EXIT_DEFECT, EXIT_OK, EXIT_PRECONDITION, EXIT_USAGE};
use serde_json::Value;

fn call(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["nhramsey"];
    full.extend_from_slice(args);
    let (code, text) = run(full);
    let v = serde_json::from_str(&text).unwrap_or(Value::Null);
    (code, v)
}

#[test]
fn params_report_shape() {
    let (code, v) = call(&["params", "--delta", "2", "--k", "10", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["command"], "params");
    assert_eq!(v["verdicts"]["ledger"]["gamma"], "1/64");
    assert_eq!(v["verdicts"]["ledger"]["s"], "6");
    assert!(v["timings"]["elapsed_seconds"].is_number());
}

#[test]
fn cache_cold_warm_and_tampered() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.jsonl");
    let c = cache.to_str().unwrap();
    let (code, cold) = call(&["--cache", c, "ramsey", "--pattern", "K3"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(cold["verdicts"]["value"], 6);
    assert_eq!(cold["verdicts"]["from_cache"], false);
    let wpath = cold["witnesses"]["lower_witness_path"].as_str().unwrap();
    assert!(std::path::Path::new(wpath).exists());

    let (code, warm) = call(&["--cache", c, "ramsey", "--pattern", "K3"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(warm["verdicts"]["value"], 6);
    assert_eq!(warm["verdicts"]["from_cache"], true);
    assert_eq!(warm["witnesses"]["lower_witness"], cold["witnesses"]["lower_witness"]);
    assert_eq!(std::fs::read_to_string(&cache).unwrap().lines().count(), 1);

    let text = std::fs::read_to_string(&cache).unwrap().replace("\"value\":6", "\"value\":7");
    std::fs::write(&cache, text).unwrap();
    let (code, v) = call(&["--cache", c, "ramsey", "--pattern", "K3", "--recheck"]);
    assert_eq!(code, EXIT_DEFECT);
    assert_eq!(v["error"]["kind"], "cache_mismatch");
}

#[test]
fn corrupt_cache_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("bad.jsonl");
    std::fs::write(&cache, "not json\n").unwrap();
    let (code, v) = call(&["--cache", cache.to_str().unwrap(), "ramsey", "--pattern", "P3"]);
    assert_eq!(code, EXIT_DEFECT);
    assert_eq!(v["error"]["kind"], "cache_corrupt");
    assert!(v["error"]["message"].as_str().unwrap().contains("line 1"));
}

#[test]
fn exit_codes() {
    assert_eq!(call(&["nonsense"]).0, EXIT_USAGE);
    assert_eq!(call(&["ramsey", "--pattern", "Q7"]).0, EXIT_PRECONDITION);
    let (code, v) = call(&["--budget", "20000", "ramsey", "--pattern", "K3", "--copies", "2"]);
    assert_eq!(code, EXIT_BUDGET);
    assert_eq!(v["verdicts"]["status"], "bracketed");
    assert!(v["verdicts"]["lo"].as_u64().unwrap() >= 9);
}

#[test]
fn witness_and_sidecar_files() {
    let dir = tempfile::tempdir().unwrap();
    let col = dir.path().join("lb.col");
    let (code, v) = call(&["construct", "lower-bound", "--pattern", "C4", "--n", "2", "--write", col.to_str().unwrap(), "--verify"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["verdicts"]["avoids"]["red"], true);
    assert_eq!(v["verdicts"]["avoids"]["blue"], true);
    let side: Value = serde_json::from_str(&std::fs::read_to_string(format!("{}.json", col.display())).unwrap()).unwrap();
    assert_eq!(side["spec"]["kind"], "lower_bound");
    let (code, v) = call(&["verify", "--colouring", col.to_str().unwrap(), "--pattern", "C4", "--copies", "2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["verdicts"]["red"], true);
    let (_, v) = call(&["verify", "--colouring", col.to_str().unwrap(), "--pattern", "C4", "--copies", "1"]);
    assert_eq!(v["verdicts"]["blue"], false);
    assert!(v["witnesses"]["blue"].is_object() || v["witnesses"]["blue"].is_array());
}

#[test]
fn out_flag_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let (code, text) = run(["nhramsey", "--out", out.to_str().unwrap(), "absorber", "toy"]);
    assert_eq!(code, EXIT_OK);
    assert!(text.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["verdicts"]["certified"], true);
    assert_eq!(v["verdicts"]["subsets_checked"], 22);
}

#[test]
fn thread_count_does_not_change_report() {
    let args = ["construct", "prop1", "--ell", "4", "--n", "1", "--verify"];
    let one = {
        let mut a = vec!["--threads", "1"];
        a.extend(args);
        call(&a).1
    };
    let eight = {
        let mut a = vec!["--threads", "8"];
        a.extend(args);
        call(&a).1
    };
    assert_eq!(deterministic_part(&one), deterministic_part(&eight));
    assert_eq!(one["verdicts"]["verdict"], "no monochromatic H_16");
}

#[test]
fn binary_text_format() {
    let out = Command::new(env!("CARGO_BIN_EXE_nhramsey"))
        .args(["--format", "text", "ramsey", "--pattern", "P3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.lines().any(|l| l == "verdicts.value: 3"));
    let out = Command::new(env!("CARGO_BIN_EXE_nhramsey")).arg("--bogus").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}
