//! The versioned report every subcommand emits.

use serde::Serialize;
use serde_json::Value;

use homotope_core::{Check, CheckReport};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: u32,
    /// The arguments after the program name.
    pub command: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pair: Option<String>,
    pub seed: u64,
    pub passed: bool,
    /// Sorted by id.
    pub checks: Vec<Check>,
    pub data: Value,
    /// Wall time; only present with `--timing` and excluded from determinism.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

impl Report {
    pub fn new(command: Vec<String>, pair: Option<String>, seed: u64, checks: CheckReport, data: Value) -> Self {
        let mut checks = checks.checks;
        checks.sort_by(|a, b| a.id.cmp(&b.id));
        Report { schema_version: SCHEMA_VERSION, command, pair, seed, passed: checks.iter().all(|c| c.passed), checks, data, timing_ms: None }
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// One row per check.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["id", "passed", "cases", "coverage", "witness", "detail"]).expect("in-memory write");
        for c in &self.checks {
            let (tuple, detail) = match &c.witness {
                Some(w) => (w.tuple.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" "), w.detail.clone()),
                None => (String::new(), String::new()),
            };
            let coverage = serde_json::to_value(c.coverage).expect("enum serializes");
            w.write_record([&c.id, &c.passed.to_string(), &c.cases.to_string(), coverage.as_str().unwrap_or(""), &tuple, &detail])
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }
}
