use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn tgklo(dir: &Path, config: &str, extra: &[&str]) -> Output {
    let path = dir.join("job.json");
    fs::write(&path, config).unwrap();
    Command::new(env!("CARGO_BIN_EXE_tgklo"))
        .arg("--config")
        .arg(&path)
        .args(extra)
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

/// Drops the timing fields.
fn untimed(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("elapsed_ms");
    for s in v["suites"].as_array_mut().unwrap() {
        for c in s["cases"].as_array_mut().unwrap() {
            c.as_object_mut().unwrap().remove("ms");
        }
    }
    v
}

#[test]
fn validation_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let out = tgklo(dir.path(), r#"{"n":2,"lambda":[0],"mu":[1]}"#, &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("mu not ≤ lambda"));
    let out = tgklo(dir.path(), "{}", &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("n required"));
    let out = tgklo(dir.path(), "{\"n\": 2,", &[]);
    assert_eq!(out.status.code(), Some(2));
    let out = tgklo(dir.path(), r#"{"n":2,"lambda":[2],"mu":[0]}"#, &["--suite", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
    let out = tgklo(dir.path(), r#"{"n":2,"lambda":[2],"mu":[0]}"#, &["--format", "xml"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn default_config_passes_and_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let cfg = r#"{"n":2,"lambda":[2],"mu":[0]}"#;
    let a = tgklo(dir.path(), cfg, &["--jobs", "1"]);
    let b = tgklo(dir.path(), cfg, &["--jobs", "3"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(b.status.code(), Some(0));
    let (mut ja, mut jb) = (untimed(json(&a)), untimed(json(&b)));
    assert_eq!(ja["config"]["parallelism"], 1);
    ja["config"]["parallelism"] = Value::Null;
    jb["config"]["parallelism"] = Value::Null;
    assert_eq!(ja, jb);
    let ids: Vec<&str> = ja["suites"].as_array().unwrap().iter().map(|s| s["id"].as_str().unwrap()).collect();
    assert_eq!(ids.len(), 11);
    assert_eq!(ja["summary"]["fail"], 0);
    assert!(ja["summary"]["pass"].as_u64().unwrap() > 100);
}

#[test]
fn suite_flag_overrides_and_negative_controls_pass() {
    let dir = TempDir::new().unwrap();
    let cfg = r#"{"n":2,"lambda":[2],"mu":[0],"suites":["gklo-defining"]}"#;
    let out = tgklo(dir.path(), cfg, &["--suite", "negative-controls"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["suites"].as_array().unwrap().len(), 1);
    let cases = v["suites"][0]["cases"].as_array().unwrap();
    assert_eq!(cases.len(), 3);
    assert!(cases.iter().all(|c| c["status"] == "expected-fail"));
    assert_eq!(v["summary"]["expected_fail"], 3);
}

#[test]
fn poisson_rtt_at_n2() {
    let dir = TempDir::new().unwrap();
    let out = tgklo(dir.path(), r#"{"n":2,"lambda":[2],"mu":[0],"N":4}"#, &["--suite", "poisson-rtt"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let cases = v["suites"][0]["cases"].as_array().unwrap();
    let rtt: Vec<&Value> = cases.iter().filter(|c| c["relation"] == "rtt-poisson/quotient").collect();
    assert_eq!(rtt.len(), 6);
    assert!(rtt.iter().all(|c| c["status"] == "pass"));
    let dirac = cases.iter().find(|c| c["relation"] == "rtt-poisson/dirac-constant").unwrap();
    assert_eq!(dirac["witness"], "bracket = 1/2 × RTT display");
}

#[test]
fn report_shape_and_text_output() {
    let dir = TempDir::new().unwrap();
    let cfg = r#"{"n":3,"lambda":[1,1],"mu":[0,0],"suites":["kernel","ideal-closure"],"parallelism":2}"#;
    let out_path = dir.path().join("report.json");
    let out = tgklo(dir.path(), cfg, &["--out", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(v["config"]["n"], 3);
    assert_eq!(v["config"]["N"], 4);
    assert_eq!(v["config"]["roots"], "symbolic");
    assert_eq!(v["config"]["suites"], serde_json::json!(["kernel", "ideal-closure"]));
    for s in v["suites"].as_array().unwrap() {
        for c in s["cases"].as_array().unwrap() {
            for key in ["relation", "indices", "status", "witness", "ms"] {
                assert!(c.get(key).is_some(), "missing {}", key);
            }
        }
    }
    let summary = &v["summary"];
    for key in ["pass", "fail", "expected_fail"] {
        assert!(summary.get(key).is_some());
    }
    let text = tgklo(dir.path(), cfg, &["--format", "text"]);
    assert_eq!(text.status.code(), Some(0));
    let t = String::from_utf8(text.stdout).unwrap();
    assert!(t.contains("[kernel]"));
    assert!(t.contains("ideal-closure/contains-high-modes"));
    assert!(t.contains("fail 0"));
}

#[test]
fn rational_roots_run() {
    let dir = TempDir::new().unwrap();
    let cfg = r#"{"n":2,"lambda":[2],"mu":[0],"roots":[["1/2","-3"]],"suites":["gklo-defining","central"]}"#;
    let out = tgklo(dir.path(), cfg, &[]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert_eq!(json(&out)["config"]["roots"], serde_json::json!([["1/2", "-3"]]));
}
