use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bicrossed"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

#[test]
fn validate_s3_reports_ok() {
    let out = run(&["validate", "examples/s3-z3z2.json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["status"], "OK");
    assert_eq!(v["total_violations"], 0);
}

#[test]
fn irr_table_trivial_pair_has_four_classes() {
    let out = run(&["irr-table", "examples/trivial-z2z2.json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["classes"].as_array().unwrap().len(), 4);
    assert_eq!(v["completeness"]["sum_dim_squared"], 4);
    assert_eq!(v["completeness"]["expected"], 4);
}

#[test]
fn rd_test_window_zero_within_bound() {
    let out = run(&["rd-test", "--k", "0", "--trials", "100", "examples/s3-z3z2.json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let w = &v["windows"][0];
    assert!(w["max_ratio"].as_f64().unwrap() <= w["window_bound"].as_f64().unwrap());
    assert!((w["window_bound"].as_f64().unwrap() - 2.0 * 2f64.sqrt()).abs() < 1e-12);
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [
        &["rd-test", "--trials", "50", "--seed", "3", "s4-d4z3"][..],
        &["fusion-table", "s3-z2z3"][..],
        &["length-check", "--c", "6", "--n", "1", "s3-z3z2"][..],
    ] {
        let a = run(args);
        let b = run(args);
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn malformed_json_is_an_input_error_with_location() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "bad.json", "{\"gamma\": [1,\n");
    let out = run(&["validate", &p]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn broken_relations_exit_with_violation() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(
        dir.path(),
        "broken.json",
        r#"{"gamma": {"order": 2, "mult": [[0,1],[1,0]]},
            "g": {"order": 2, "mult": [[0,1],[1,0]]},
            "alpha": [[0,1],[0,1]], "beta": [[0,1],[0,0]]}"#,
    );
    let out = run(&["validate", &p]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["status"], "FAIL");
    assert!(v["total_violations"].as_u64().unwrap() > 0);
}

#[test]
fn empty_window_and_unknown_input() {
    assert_eq!(run(&["rd-test", "--k", "1", "s3-z3z2"]).status.code(), Some(2));
    assert_eq!(run(&["validate", "no-such-pair.json"]).status.code(), Some(2));
    assert_eq!(run(&["growth", "--length", "bogus", "s3-z3z2"]).status.code(), Some(2));
    assert_eq!(run(&["length-check", "--c", "1", "s3-z3z2"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn growth_with_generators_and_length_file() {
    let out = run(&["growth", "s3-z3z2"]);
    assert_eq!(json(&out)["terms"], serde_json::json!([2, 0, 4]));

    // on ℤ₂ × ℤ₂ with trivial actions, l′ from the generator s
    let out = run(&["growth", "--length", "lprime", "--generators", "s", "trivial-z2z2"]);
    assert_eq!(json(&out)["terms"], serde_json::json!([2, 2]));

    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "l.json", r#"{"e:0": 0, "e:1": 1.5, "s:0": 1, "s:1": 1.5}"#);
    let out = run(&["length-check", "--length", &p, "trivial-z2z2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert_eq!(json(&out)["growth_conditions"], Value::Null);

    // 3 > 1.5 + 1 breaks subadditivity
    let p = write(dir.path(), "bad.json", r#"{"e:0": 0, "e:1": 3, "s:0": 1, "s:1": 1.5}"#);
    let out = run(&["length-check", "--length", &p, "trivial-z2z2"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["length_axioms"]["ok"], false);

    let p = write(dir.path(), "partial.json", r#"{"e:0": 0}"#);
    assert_eq!(run(&["growth", "--length", &p, "trivial-z2z2"]).status.code(), Some(2));
}

#[test]
fn out_and_cache_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let out_path = dir.path().join("t.json");
    let plain = run(&["irr-table", "s4-d4z3"]);
    let cached = run(&[
        "irr-table",
        "s4-d4z3",
        "--cache",
        cache.to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(cached.status.code(), Some(0));
    assert!(cached.stdout.is_empty());
    assert_eq!(std::fs::read(&out_path).unwrap(), plain.stdout);
    let files = std::fs::read_dir(&cache).unwrap().count();
    assert!(files > 0);
    // second run reads from the cache and agrees
    let again = run(&["irr-table", "s4-d4z3", "--cache", cache.to_str().unwrap()]);
    assert_eq!(again.stdout, plain.stdout);
}

#[test]
fn examples_lists_the_corpus() {
    let out = run(&["examples"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let rows = v["examples"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    let s4 = rows.iter().find(|r| r["name"] == "s4-d4z3").unwrap();
    assert_eq!(s4["sum_dim_squared"], 24);
    assert_eq!(s4["both_actions_nontrivial"], true);
}

#[test]
fn induce_and_irreps() {
    let out = run(&["induce", "s3-z2z3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out)["induced"].as_array().unwrap().iter().all(|r| r["frobenius_ok"] == true));
    let out = run(&["irreps", "s4-d4z3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["g"]["irreps"].as_array().unwrap().len(), 3);
}
