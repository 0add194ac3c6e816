//! Check results and the JSON report.

use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use tatelab_core::scalars::FieldConfig;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub status: Status,
    pub expected: Value,
    pub actual: Value,
    /// The claim being checked, quoted as a short statement.
    pub paper_anchor: String,
    pub runtime_ms: u64,
}

impl CheckResult {
    pub fn new(id: &str, anchor: &str, expected: Value, actual: Value, pass: bool) -> Self {
        CheckResult {
            id: id.to_string(),
            status: if pass { Status::Pass } else { Status::Fail },
            expected,
            actual,
            paper_anchor: anchor.to_string(),
            runtime_ms: 0,
        }
    }

    /// A check that could not run; the error text is the actual value.
    pub fn error(id: &str, anchor: &str, expected: Value, err: impl std::fmt::Display) -> Self {
        CheckResult::new(id, anchor, expected, Value::String(format!("error: {err}")), false)
    }

    pub fn skipped(id: &str, anchor: &str, reason: &str) -> Self {
        CheckResult {
            id: id.to_string(),
            status: Status::Skipped,
            expected: Value::Null,
            actual: Value::String(reason.to_string()),
            paper_anchor: anchor.to_string(),
            runtime_ms: 0,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

/// Echo of the field configuration in the report header.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FieldEcho {
    pub field: String,
    pub alpha: String,
    pub range_bound: u32,
}

impl From<&FieldConfig> for FieldEcho {
    fn from(cfg: &FieldConfig) -> Self {
        FieldEcho { field: cfg.mode.to_string(), alpha: cfg.alpha.to_string(), range_bound: cfg.range_bound }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub config: Option<FieldEcho>,
    pub checks: Vec<CheckResult>,
    pub summary: Summary,
}

impl Report {
    pub fn new(config: Option<FieldEcho>, mut checks: Vec<CheckResult>) -> Self {
        checks.sort_by(|a, b| a.id.cmp(&b.id));
        let mut summary = Summary::default();
        for c in &checks {
            match c.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Skipped => summary.skipped += 1,
            }
        }
        Report {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            config,
            checks,
            summary,
        }
    }

    /// Zero every runtime so that reports of equal runs compare byte for byte.
    pub fn strip_timings(&mut self) {
        for c in &mut self.checks {
            c.runtime_ms = 0;
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// One line per check.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            out.push_str(&format!("{status} {} ({} ms): {}\n", c.id, c.runtime_ms, c.actual));
        }
        let s = &self.summary;
        out.push_str(&format!("{} passed, {} failed, {} skipped\n", s.pass, s.fail, s.skipped));
        out
    }
}

/// A report holding a single failed `config` check.
pub fn config_report(err: impl std::fmt::Display) -> Report {
    let check = CheckResult::error("config", "a valid field configuration and index ranges", Value::from("valid"), err);
    Report::new(None, vec![check])
}

/// Write the report as UTF-8 JSON.
pub fn emit_json(report: &Report, path: &Path) -> std::io::Result<()> {
    let mut f = std::fs::File::create(path)?;
    f.write_all(report.to_json().as_bytes())?;
    f.write_all(b"\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn empty_report() {
        let r = Report::new(None, Vec::new());
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["checks"], json!([]));
        assert_eq!(v["summary"], json!({"pass": 0, "fail": 0, "skipped": 0}));
        assert!(r.all_passed());
    }

    #[test]
    fn counts_and_order() {
        let b = CheckResult::new("b", "claim", json!(1), json!(2), false);
        let a = CheckResult::new("a", "claim", json!(1), json!(1), true);
        let r = Report::new(None, vec![b, a]);
        assert_eq!(r.checks[0].id, "a");
        assert_eq!(r.summary, Summary { pass: 1, fail: 1, skipped: 0 });
        assert!(!r.all_passed());
    }

    #[test]
    fn key_order_is_stable() {
        let r = Report::new(None, vec![CheckResult::new("a", "claim", json!(1), json!(1), true)]);
        let text = r.to_json();
        let pos = |k: &str| text.find(&format!("\"{k}\"")).unwrap();
        assert!(pos("tool") < pos("version") && pos("version") < pos("config") && pos("config") < pos("checks"));
        assert!(
            pos("id") < pos("status") && pos("status") < pos("expected") && pos("paper_anchor") < pos("runtime_ms")
        );
    }
}
