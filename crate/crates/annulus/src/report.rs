//! Structured pass/fail output shared by all verifiers.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckResult {
    pub fn pass(name: impl Into<String>, detail: impl Into<String>) -> Self {
        CheckResult { name: name.into(), passed: true, detail: detail.into(), witness: None }
    }

    pub fn fail(name: impl Into<String>, detail: impl Into<String>, witness: impl Into<String>) -> Self {
        CheckResult { name: name.into(), passed: false, detail: detail.into(), witness: Some(witness.into()) }
    }

    /// Pass when `first_failure` is `None`, otherwise fail with it as witness.
    pub fn from_witness(name: impl Into<String>, detail: impl Into<String>, first_failure: Option<String>) -> Self {
        match first_failure {
            None => CheckResult::pass(name, detail),
            Some(w) => CheckResult::fail(name, detail, w),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, c: CheckResult) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Prefixes every check name, for merging reports from several configs.
    pub fn prefixed(mut self, prefix: &str) -> Report {
        for c in &mut self.checks {
            c.name = format!("{prefix}{}", c.name);
        }
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_aggregation() {
        let mut r = Report::new();
        r.push(CheckResult::pass("a", "ok"));
        assert!(r.passed());
        r.push(CheckResult::from_witness("b", "x", Some("w".into())));
        assert!(!r.passed());
        assert_eq!(r.failures().count(), 1);
        assert_eq!(r.get("b").unwrap().witness.as_deref(), Some("w"));
        assert_eq!(r.prefixed("p/").checks[0].name, "p/a");
    }
}
