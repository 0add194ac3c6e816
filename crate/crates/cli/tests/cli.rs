use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

fn tatelab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tatelab")).args(args).output().expect("binary runs")
}

fn run_json(dir: &TempDir, name: &str, args: &[&str]) -> (i32, Value) {
    let path = dir.path().join(name);
    let mut all: Vec<&str> = args.to_vec();
    let p = path.to_str().unwrap();
    all.extend(["--json", p]);
    let out = tatelab(&all);
    let text = std::fs::read_to_string(&path).expect("report written");
    (out.status.code().expect("exit code"), serde_json::from_str(&text).expect("valid JSON"))
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn ring_suite_passes_with_exit_zero() {
    let dir = TempDir::new().unwrap();
    let (code, v) = run_json(&dir, "ring.json", &["verify", "ring"]);
    assert_eq!(code, 0);
    assert_eq!(v["summary"], json!({"pass": 3, "fail": 0, "skipped": 0}));
    let ids: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap()).collect();
    assert_eq!(ids, ["01-ring-structure", "02-multiplication-table", "04-groebner-koszul"]);
    assert_eq!(v["config"], json!({"field": "q", "alpha": "2", "range_bound": 16}));
    assert_eq!(v["tool"], json!("tatelab"));
}

#[test]
fn every_check_has_the_schema_fields() {
    let dir = TempDir::new().unwrap();
    let (_, v) = run_json(&dir, "ring.json", &["verify", "ring"]);
    for c in v["checks"].as_array().unwrap() {
        let keys: Vec<&String> = c.as_object().unwrap().keys().collect();
        assert_eq!(keys.len(), 6);
        for k in ["id", "status", "expected", "actual", "paper_anchor", "runtime_ms"] {
            assert!(c.get(k).is_some(), "missing {k}");
        }
        assert!(!c["paper_anchor"].as_str().unwrap().is_empty());
        assert!(c["runtime_ms"].is_u64());
    }
}

#[test]
fn alpha_one_is_a_config_failure() {
    let dir = TempDir::new().unwrap();
    let (code, v) = run_json(&dir, "bad.json", &["verify", "ring", "--alpha", "1"]);
    assert_eq!(code, 2);
    assert_eq!(v["checks"][0]["id"], json!("config"));
    assert_eq!(v["checks"][0]["status"], json!("fail"));
    assert_eq!(v["summary"]["fail"], json!(1));
}

#[test]
fn alpha_of_small_order_is_rejected_over_a_prime_field() {
    let dir = TempDir::new().unwrap();
    // 2 has order 3 modulo 7
    let (code, v) = run_json(&dir, "bad.json", &["verify", "ring", "--field", "fp:7"]);
    assert_eq!(code, 2);
    assert!(v["checks"][0]["actual"].as_str().unwrap().contains("order"));
}

#[test]
fn unparsable_field_and_preset_are_config_failures() {
    let dir = TempDir::new().unwrap();
    let (code, _) = run_json(&dir, "a.json", &["verify", "ring", "--field", "reals"]);
    assert_eq!(code, 2);
    let (code, v) = run_json(&dir, "b.json", &["betti", "--module", "Q"]);
    assert_eq!(code, 2);
    assert!(v["config"].is_null());
}

#[test]
fn negative_alpha_is_accepted() {
    let out = tatelab(&["verify", "ring", "--alpha", "-3/2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn auslander_q2_pattern() {
    let dir = TempDir::new().unwrap();
    let (code, v) = run_json(&dir, "a.json", &["auslander", "--q", "2"]);
    assert_eq!(code, 0);
    let check = &v["checks"][0];
    assert_eq!(check["id"], json!("09-auslander"));
    let pattern = &check["actual"]["q=2"]["pattern"];
    assert_eq!(pattern, &json!(["nonzero", "nonzero", "nonzero", "zero", "zero", "zero", "zero"]));
}

#[test]
fn invsys_default_and_custom_forms() {
    let dir = TempDir::new().unwrap();
    let (code, _) = run_json(&dir, "a.json", &["invsys", "verify"]);
    assert_eq!(code, 0);
    let cube = write(&dir, "cube.txt", "tX^3");
    let (code, v) = run_json(&dir, "b.json", &["invsys", "verify", "--form", &cube]);
    assert_eq!(code, 1);
    assert_eq!(v["checks"][0]["actual"]["apolar_hilbert"], json!([1, 1, 1, 1, 0]));
    let quadric = write(&dir, "quadric.txt", "tX^2");
    let (code, v) = run_json(&dir, "c.json", &["invsys", "verify", "--form", &quadric]);
    assert_eq!(code, 1);
    assert!(v["checks"][0]["actual"].as_str().unwrap().contains("degree 3"));
}

#[test]
fn ring_file_round_trip() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "ring.txt", tatelab_core::polyring::PRESET_TEXT);
    let (code, v) = run_json(&dir, "r.json", &["ring", "verify", "--file", &file]);
    assert_eq!(code, 0);
    let build = v["checks"].as_array().unwrap().iter().find(|c| c["id"] == "ring-build").expect("ring-build check");
    assert_eq!(build["actual"]["hilbert_function"], json!([1, 6, 6, 1]));
    let missing = dir.path().join("missing.txt");
    let out = tatelab(&["ring", "verify", "--file", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn informational_commands() {
    let dir = TempDir::new().unwrap();
    let (code, v) = run_json(&dir, "b.json", &["betti", "--module", "k", "--n", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["checks"][0]["actual"]["totals"], json!([1, 6, 30, 145]));
    let (code, v) = run_json(&dir, "e.json", &["ext", "--from", "N", "--to", "M", "--range", "0..3"]);
    assert_eq!(code, 0);
    assert_eq!(v["checks"][0]["actual"]["ext"]["dims"], json!([3, 6, 29, 139]));
    let (code, v) = run_json(&dir, "t.json", &["tate", "--range", "-3..3"]);
    assert_eq!(code, 0);
    assert_eq!(v["checks"][0]["actual"]["tate_ext_m_n"]["dims"], json!([29, 6, 2, 1, 0, 0, 0]));
    let (code, v) = run_json(&dir, "c.json", &["complex", "verify", "--neg", "3", "--pos", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["checks"][0]["actual"]["homology"]["dims"], json!([0, 0, 0, 0, 0, 0, 0]));
}

#[test]
fn reports_are_byte_identical_without_timings() {
    let dir = TempDir::new().unwrap();
    let args = ["verify", "ring", "--no-timings", "--json"];
    let read = |name: &str| {
        let path = dir.path().join(name);
        let mut a: Vec<&str> = args.to_vec();
        a.push(path.to_str().unwrap());
        assert_eq!(tatelab(&a).status.code(), Some(0));
        std::fs::read(&path).unwrap()
    };
    assert_eq!(read("one.json"), read("two.json"));
}

#[test]
fn unwritable_report_path_fails() {
    let out = tatelab(&["verify", "ring", "--json", "/nonexistent-dir/report.json"]);
    assert_ne!(out.status.code(), Some(0));
    assert!(!Path::new("/nonexistent-dir/report.json").exists());
}
