use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub check: String,
    pub instance: String,
    pub status: Status,
}

/// Outcome of a family of checks. Passing exhaustive checks are summarised
/// in one record; every failing instance gets its own record.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Report {
    pub records: Vec<CheckRecord>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, check: &str, instance: impl Into<String>, status: Status) {
        self.records.push(CheckRecord {
            check: check.to_string(),
            instance: instance.into(),
            status,
        });
    }

    /// Records `violations` for `check` over `total` instances, or a single
    /// passing summary when there are none.
    pub fn record(&mut self, check: &str, total: usize, violations: Vec<String>) {
        if violations.is_empty() {
            self.push(check, format!("all {total} instances"), Status::Pass);
        } else {
            for v in violations {
                self.push(check, v, Status::Fail);
            }
        }
    }

    pub fn extend(&mut self, other: Report) {
        self.records.extend(other.records);
    }

    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.status == Status::Pass)
    }

    pub fn check_passed(&self, check: &str) -> bool {
        self.records
            .iter()
            .filter(|r| r.check == check)
            .all(|r| r.status == Status::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| r.status == Status::Fail)
    }

    pub fn failure_count(&self) -> usize {
        self.failures().count()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.records {
            let status = match r.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            };
            writeln!(f, "{status} {}: {}", r.check, r.instance)?;
        }
        Ok(())
    }
}
