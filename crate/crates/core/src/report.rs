//! Structured results of verification suites.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;

use crate::algebra::golden::Golden;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub label: String,
    pub status: Status,
    pub detail: String,
}

impl Check {
    pub fn new(label: impl Into<String>, ok: bool, detail: impl Into<String>) -> Check {
        Check { label: label.into(), status: Status::from_bool(ok), detail: detail.into() }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn relabel(mut self, label: impl Into<String>) -> Check {
        self.label = label.into();
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub status: Status,
    pub checks: Vec<Check>,
    pub derived_constants: BTreeMap<String, String>,
    pub wall_time_ms: u128,
    #[serde(skip)]
    started: Option<Instant>,
}

impl VerifyReport {
    pub fn new(suite: impl Into<String>) -> VerifyReport {
        VerifyReport {
            suite: suite.into(),
            status: Status::Pass,
            checks: Vec::new(),
            derived_constants: BTreeMap::new(),
            wall_time_ms: 0,
            started: Some(Instant::now()),
        }
    }

    pub fn push(&mut self, check: Check) {
        if !check.passed() {
            self.status = Status::Fail;
        }
        self.checks.push(check);
    }

    pub fn check(&mut self, label: impl Into<String>, ok: bool, detail: impl Into<String>) -> bool {
        self.push(Check::new(label, ok, detail));
        ok
    }

    pub fn constant(&mut self, name: impl Into<String>, value: &Golden) {
        self.derived_constants.insert(name.into(), value.canonical());
    }

    /// Folds another report's checks and constants into this one, prefixing
    /// labels with the other suite name.
    pub fn absorb(&mut self, other: VerifyReport) {
        for c in other.checks {
            let label = format!("{}/{}", other.suite, c.label);
            self.push(c.relabel(label));
        }
        for (k, v) in other.derived_constants {
            self.derived_constants.insert(format!("{}/{}", other.suite, k), v);
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed()).collect()
    }

    pub fn finish(mut self) -> VerifyReport {
        if let Some(t) = self.started.take() {
            self.wall_time_ms = t.elapsed().as_millis();
        }
        if self.checks.is_empty() {
            self.status = Status::Fail;
        }
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable report")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_tracks_checks() {
        let mut r = VerifyReport::new("demo");
        r.check("a", true, "");
        assert!(r.passed());
        r.check("b", false, "broken");
        assert!(!r.passed());
        assert_eq!(r.failures().len(), 1);
        r.constant("c0", &Golden::from_ratio(1, 4));
        let json = r.finish().to_json();
        assert!(json.contains("\"status\": \"fail\""));
        assert!(json.contains("\"c0\": \"1/4\""));
    }

    #[test]
    fn empty_report_fails() {
        assert!(!VerifyReport::new("empty").finish().passed());
    }
}
