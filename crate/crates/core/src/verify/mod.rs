//! Verification campaigns producing deterministic, machine-readable reports.
//!
//! Every check carries a short description of the statement it certifies.
//! Checks are sorted by name, so merging reports built in parallel gives
//! the same bytes regardless of scheduling.

mod campaigns;

use std::fmt::Write as _;

use serde::Serialize;

pub use campaigns::{
    verify_classification, verify_finite, verify_intertwiners, verify_larger, verify_module, VerifyConfig,
};

use crate::combinatorics::CombinatoricsError;
use crate::scalars::ScalarError;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VerifyError {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Combinatorics(#[from] CombinatoricsError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    /// The statement this check certifies.
    pub anchor: &'static str,
    pub passed: bool,
    /// The offending weight, index, or entry when the check fails.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, anchor: &'static str, passed: bool, witness: impl FnOnce() -> String) -> Self {
        let witness = if passed { None } else { Some(witness()) };
        Check { name: name.into(), anchor, passed, witness }
    }

    pub fn from_result(name: impl Into<String>, anchor: &'static str, r: Result<(), String>) -> Self {
        let passed = r.is_ok();
        Check { name: name.into(), anchor, passed, witness: r.err() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub campaign: String,
    pub summary: Summary,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(campaign: impl Into<String>, mut checks: Vec<Check>) -> Self {
        checks.sort_by(|a, b| a.name.cmp(&b.name).then(a.anchor.cmp(b.anchor)));
        let passed = checks.iter().filter(|c| c.passed).count();
        Report {
            schema_version: REPORT_SCHEMA_VERSION,
            campaign: campaign.into(),
            summary: Summary { total: checks.len(), passed, failed: checks.len() - passed },
            checks,
        }
    }

    /// Union of several reports under a new campaign name.
    pub fn merge(campaign: impl Into<String>, parts: impl IntoIterator<Item = Report>) -> Self {
        Report::new(campaign, parts.into_iter().flat_map(|r| r.checks).collect())
    }

    pub fn passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn find(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            let _ = write!(out, "{status} {} [{}]", c.name, c.anchor);
            if let Some(w) = &c.witness {
                let _ = write!(out, ": {w}");
            }
            out.push('\n');
        }
        let s = self.summary;
        let _ = writeln!(out, "{}: {} checks, {} passed, {} failed", self.campaign, s.total, s.passed, s.failed);
        out
    }
}
