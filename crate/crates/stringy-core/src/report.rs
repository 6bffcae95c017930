//! Check reports.
//!
//! Validators and axiom sweeps record how many cases they examined and keep
//! a finding per failure (or deliberate skip). An empty findings list over a
//! positive case count is a clean pass. Findings carry a stable check id and
//! a witness string naming the offending data, and are emitted in check
//! order so reports are deterministic.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Pass => write!(f, "pass"),
            Status::Fail => write!(f, "FAIL"),
            Status::Skip => write!(f, "skip"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Finding {
    pub check: String,
    pub status: Status,
    pub witness: String,
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub findings: Vec<Finding>,
    /// Total number of individual checks performed.
    pub cases: usize,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn case(&mut self) {
        self.cases += 1;
    }

    pub fn fail(&mut self, check: impl Into<String>, witness: impl Into<String>) {
        self.findings.push(Finding {
            check: check.into(),
            status: Status::Fail,
            witness: witness.into(),
        });
    }

    pub fn skip(&mut self, check: impl Into<String>, witness: impl Into<String>) {
        self.findings.push(Finding {
            check: check.into(),
            status: Status::Skip,
            witness: witness.into(),
        });
    }

    /// Record one checked case that either passed (no finding) or failed.
    pub fn check(&mut self, check: &str, witness: impl FnOnce() -> String, ok: bool) {
        self.cases += 1;
        if !ok {
            self.fail(check, witness());
        }
    }

    /// No failures (skips are allowed).
    pub fn ok(&self) -> bool {
        self.findings.iter().all(|f| f.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Finding> {
        self.findings.iter().filter(|f| f.status == Status::Fail)
    }

    pub fn merge(&mut self, other: Report) {
        self.cases += other.cases;
        self.findings.extend(other.findings);
    }
}
