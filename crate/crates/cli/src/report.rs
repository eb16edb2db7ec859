//! Machine-readable results.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use su3_bethe::{Error, Rat};

use crate::case::to_json;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    /// Route or side name to an exact rational string.
    pub values: BTreeMap<String, String>,
    pub passed: bool,
    /// Microseconds; the only field that varies between identical runs.
    pub wall_us: u64,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub counts: BTreeMap<String, u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl CheckResult {
    pub fn new(name: impl Into<String>) -> Self {
        CheckResult { name: name.into(), ..Default::default() }
    }

    pub fn value(&mut self, key: impl Into<String>, v: &Rat) -> &mut Self {
        self.values.insert(key.into(), v.to_string());
        self
    }

    pub fn count(&mut self, key: impl Into<String>, n: usize) -> &mut Self {
        self.counts.insert(key.into(), n as u64);
        self
    }

    /// Runs `body`; an error fails the check and is recorded.
    pub fn timed(name: impl Into<String>, body: impl FnOnce(&mut CheckResult) -> Result<bool, Error>) -> Self {
        let mut c = CheckResult::new(name);
        let t = Instant::now();
        match body(&mut c) {
            Ok(p) => c.passed = p,
            Err(e) => {
                c.passed = false;
                c.error = Some(e.to_string());
            }
        }
        c.wall_us = t.elapsed().as_micros() as u64;
        c
    }

    /// Passes when all values are present and equal.
    pub fn all_equal(&self) -> bool {
        let mut it = self.values.values();
        match it.next() {
            Some(first) => it.all(|v| v == first),
            None => false,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseReport {
    pub id: String,
    pub l: usize,
    pub m: usize,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub genericity: Vec<String>,
    pub checks: Vec<CheckResult>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub passed: bool,
    pub cases: Vec<CaseReport>,
}

impl Report {
    /// Orders cases by id and recomputes the overall verdict.
    pub fn assemble(command: impl Into<String>, mut cases: Vec<CaseReport>) -> Self {
        cases.sort_by(|a, b| a.id.cmp(&b.id));
        let passed = cases.iter().all(|c| c.passed);
        Report { command: command.into(), passed, cases }
    }

    /// The report with every timing field zeroed.
    pub fn without_timing(&self) -> Self {
        let mut r = self.clone();
        for c in &mut r.cases {
            for k in &mut c.checks {
                k.wall_us = 0;
            }
        }
        r
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }
}

pub fn save_report(report: &Report, path: &Path) -> std::io::Result<()> {
    fs::write(path, report.to_json())
}

pub fn load_report(path: &Path) -> su3_bethe::Result<Report> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse { line: 0, field: String::new(), msg: format!("{}: {e}", path.display()) })?;
    let de = &mut serde_json::Deserializer::from_str(&text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let field = e.path().to_string();
        let inner = e.inner();
        Error::Parse { line: inner.line(), field, msg: inner.to_string() }
    })
}
