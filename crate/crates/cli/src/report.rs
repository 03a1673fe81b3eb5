use std::fmt::Write;

use serde::Serialize;
use weakmod::ConditionReport;

use crate::config::ModelKind;

pub const SCHEMA_VERSION: u32 = 1;

/// Witnesses printed per suite in the text summary.
const SHOWN_WITNESSES: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub center: String,
    pub instances_checked: u64,
    pub violations: Vec<Vec<String>>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn new(suite: &str, center: String) -> Self {
        Self {
            suite: suite.to_string(),
            center,
            instances_checked: 0,
            violations: Vec::new(),
            passed: true,
            notes: Vec::new(),
        }
    }

    pub fn violation(&mut self, witness: Vec<String>) {
        self.violations.push(witness);
    }

    pub fn finish(mut self) -> Self {
        self.violations.sort();
        self.passed = self.violations.is_empty();
        self
    }

    pub fn from_condition(suite: &str, r: ConditionReport) -> Self {
        Self {
            suite: suite.to_string(),
            center: r.center,
            instances_checked: r.instances_checked,
            violations: r.violations,
            passed: r.passed,
            notes: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunConfigEcho {
    pub model: ModelKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<i64>,
    pub radius: usize,
    pub checks: Vec<String>,
    pub all_centers: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportBundle {
    pub schema_version: u32,
    pub tool_version: &'static str,
    pub config: RunConfigEcho,
    pub suites: Vec<SuiteReport>,
    pub passed: bool,
}

impl ReportBundle {
    pub fn new(config: RunConfigEcho, suites: Vec<SuiteReport>) -> Self {
        let passed = suites.iter().all(|s| s.passed);
        Self {
            schema_version: SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION"),
            config,
            suites,
            passed,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.suites {
            let verdict = if s.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(
                out,
                "{verdict} {} center={} instances={} violations={}",
                s.suite,
                s.center,
                s.instances_checked,
                s.violations.len()
            );
            for note in &s.notes {
                let _ = writeln!(out, "  {note}");
            }
            for w in s.violations.iter().take(SHOWN_WITNESSES) {
                let _ = writeln!(out, "  witness: ({})", w.join(" ; "));
            }
        }
        let _ = writeln!(
            out,
            "{}: {} suites",
            if self.passed { "PASSED" } else { "FAILED" },
            self.suites.len()
        );
        out
    }
}
