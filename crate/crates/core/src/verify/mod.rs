//! Check orchestration and report emission.

pub mod checks;
pub mod random;

use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};

pub use checks::{lookup, Params, REGISTRY};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckSpec {
    pub name: String,
    pub params: Params,
    pub enabled: bool,
}

impl CheckSpec {
    /// Registered check with its default bounds.
    pub fn new(name: &str) -> Result<Self> {
        let def = lookup(name).ok_or_else(|| Error::UnknownCheck(name.to_string()))?;
        Ok(CheckSpec {
            name: name.to_string(),
            params: def.defaults.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            enabled: true,
        })
    }

    pub fn with(mut self, key: &str, value: i64) -> Self {
        self.params.insert(key.to_string(), value);
        self
    }
}

/// Default specs for `all`, `sequences`, `lie` or `models`.
pub fn suite(name: &str) -> Result<Vec<CheckSpec>> {
    if !matches!(name, "all" | "sequences" | "lie" | "models") {
        return Err(Error::InvalidArgument(format!("unknown suite {name:?}")));
    }
    REGISTRY
        .iter()
        .filter(|c| name == "all" || c.suite == name)
        .map(|c| CheckSpec::new(c.name))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub params: Params,
    pub status: Status,
    pub witness: Option<Value>,
    pub runtime_ms: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
    pub summary: Summary,
}

impl VerificationReport {
    fn from_results(mut checks: Vec<CheckResult>) -> Self {
        checks.sort_by(|a, b| (&a.name, &a.params).cmp(&(&b.name, &b.params)));
        let summary = Summary {
            total: checks.len(),
            passed: checks.iter().filter(|c| c.status == Status::Pass).count(),
            failed: checks.iter().filter(|c| c.status == Status::Fail).count(),
        };
        VerificationReport { checks, summary }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn get(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Zeroes the timings so repeated runs emit identical bytes.
    pub fn without_timings(mut self) -> Self {
        for c in &mut self.checks {
            c.runtime_ms = 0;
        }
        self
    }
}

fn validate(spec: &CheckSpec) -> Result<()> {
    lookup(&spec.name).ok_or_else(|| Error::UnknownCheck(spec.name.clone()))?;
    if let Some((k, v)) = spec.params.iter().find(|(_, v)| **v < 0) {
        return Err(Error::InvalidArgument(format!("{}: parameter {k} = {v} must be non-negative", spec.name)));
    }
    Ok(())
}

fn run_one(spec: &CheckSpec) -> CheckResult {
    let def = lookup(&spec.name).expect("validated");
    let mut params: Params = def.defaults.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    params.extend(spec.params.iter().map(|(k, v)| (k.clone(), *v)));
    if !spec.enabled {
        return CheckResult { name: spec.name.clone(), params, status: Status::Skipped, witness: None, runtime_ms: 0 };
    }
    let start = Instant::now();
    let outcome = (def.run)(&params);
    let runtime_ms = start.elapsed().as_millis() as u64;
    let (status, witness) = match outcome {
        Ok(v) => (if v.pass { Status::Pass } else { Status::Fail }, v.witness),
        Err(e) => (Status::Fail, Some(serde_json::json!({ "error": e.to_string() }))),
    };
    CheckResult { name: spec.name.clone(), params, status, witness, runtime_ms }
}

/// Validates every spec, then runs the enabled ones on the rayon pool.
/// Results are sorted by `(name, params)`.
pub fn run_suite(specs: &[CheckSpec]) -> Result<VerificationReport> {
    for spec in specs {
        validate(spec)?;
    }
    let results: Vec<CheckResult> = specs.par_iter().map(run_one).collect();
    Ok(VerificationReport::from_results(results))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Markdown,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "markdown" | "md" => Ok(Format::Markdown),
            other => Err(Error::InvalidArgument(format!("unknown format {other:?}"))),
        }
    }
}

fn params_inline(p: &Params) -> String {
    p.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";")
}

fn status_str(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::Skipped => "skipped",
    }
}

pub fn emit(report: &VerificationReport, format: Format) -> Vec<u8> {
    match format {
        Format::Json => serde_json::to_vec(report).expect("report serializes"),
        Format::Csv => {
            let mut out = String::from("name,params,status,runtime_ms\n");
            for c in &report.checks {
                let _ = writeln!(out, "{},{},{},{}", c.name, params_inline(&c.params), status_str(c.status), c.runtime_ms);
            }
            out.into_bytes()
        }
        Format::Markdown => {
            let mut out = String::from("| check | params | status | runtime_ms |\n|---|---|---|---|\n");
            for c in &report.checks {
                let _ = writeln!(
                    out,
                    "| {} | {} | {} | {} |",
                    c.name,
                    params_inline(&c.params),
                    status_str(c.status),
                    c.runtime_ms
                );
            }
            let s = &report.summary;
            let _ = writeln!(out, "\n{} checks: {} passed, {} failed", s.total, s.passed, s.failed);
            out.into_bytes()
        }
    }
}
