//! Uniform result record for every checker.

use serde::Serialize;

use crate::rational::{self, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Holds,
    /// Below the "all but finitely many" threshold; not counted either way.
    Exempt,
    /// Could not be decided, usually because of censored values.
    Inconclusive,
    Fails,
}

/// Exact checks are hard failures; diagnostics compare finite-horizon
/// proxies of limit statements and never fail a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Severity {
    Exact,
    Diagnostic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub severity: Severity,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
    #[serde(
        serialize_with = "rational::serialize_opt",
        skip_serializing_if = "Option::is_none"
    )]
    pub tolerance: Option<Rational>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub details: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>, severity: Severity, status: Status) -> Self {
        CheckReport {
            name: name.into(),
            severity,
            status,
            lhs: None,
            rhs: None,
            tolerance: None,
            details: Vec::new(),
            note: None,
        }
    }

    pub fn exact(name: impl Into<String>, holds: bool) -> Self {
        CheckReport::new(
            name,
            Severity::Exact,
            if holds { Status::Holds } else { Status::Fails },
        )
    }

    pub fn sides(mut self, lhs: impl ToString, rhs: impl ToString) -> Self {
        self.lhs = Some(lhs.to_string());
        self.rhs = Some(rhs.to_string());
        self
    }

    pub fn with_tolerance(mut self, tol: Rational) -> Self {
        self.tolerance = Some(tol);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn detail(mut self, line: impl Into<String>) -> Self {
        self.details.push(line.into());
        self
    }

    pub fn holds(&self) -> bool {
        self.status == Status::Holds
    }

    pub fn is_hard_failure(&self) -> bool {
        self.severity == Severity::Exact && self.status == Status::Fails
    }
}
