use std::fmt;
use std::time::{Duration, Instant};

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIPPED",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseResult {
    pub label: String,
    pub status: Status,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub check_id: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scope: Option<String>,
    pub cases: Vec<CaseResult>,
    #[serde(rename = "elapsed_ms", serialize_with = "as_millis")]
    pub elapsed: Duration,
}

fn as_millis<S: serde::Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_u64(d.as_millis() as u64)
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &CaseResult> {
        self.cases.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }

    pub fn count(&self, status: Status) -> usize {
        self.cases.iter().filter(|c| c.status == status).count()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{}: {} ({} pass, {} fail, {} skipped; {} ms)",
            self.check_id,
            self.status,
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Skipped),
            self.elapsed.as_millis()
        )?;
        if let Some(scope) = &self.scope {
            writeln!(f, "scope: {scope}")?;
        }
        for c in &self.cases {
            writeln!(
                f,
                "  [{}] {}: expected {}; actual {}",
                c.status, c.label, c.expected, c.actual
            )?;
        }
        Ok(())
    }
}

/// Accumulates cases; the overall status is Fail if any case fails, Pass if
/// some case passes, and Skipped otherwise.
pub(crate) struct ReportBuilder {
    check_id: String,
    scope: Option<String>,
    cases: Vec<CaseResult>,
    start: Instant,
}

impl ReportBuilder {
    pub fn new(check_id: impl Into<String>) -> Self {
        ReportBuilder {
            check_id: check_id.into(),
            scope: None,
            cases: Vec::new(),
            start: Instant::now(),
        }
    }

    pub fn scope(mut self, scope: impl Into<String>) -> Self {
        self.scope = Some(scope.into());
        self
    }

    pub fn check(
        &mut self,
        label: impl Into<String>,
        ok: bool,
        expected: impl fmt::Display,
        actual: impl fmt::Display,
    ) -> bool {
        self.cases.push(CaseResult {
            label: label.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            expected: expected.to_string(),
            actual: actual.to_string(),
        });
        ok
    }

    pub fn skip(&mut self, label: impl Into<String>, reason: impl Into<String>) {
        self.cases.push(CaseResult {
            label: label.into(),
            status: Status::Skipped,
            expected: "-".into(),
            actual: reason.into(),
        });
    }

    pub fn finish(self) -> VerificationReport {
        let status = if self.cases.iter().any(|c| c.status == Status::Fail) {
            Status::Fail
        } else if self.cases.iter().any(|c| c.status == Status::Pass) {
            Status::Pass
        } else {
            Status::Skipped
        };
        VerificationReport {
            check_id: self.check_id,
            status,
            scope: self.scope,
            cases: self.cases,
            elapsed: self.start.elapsed(),
        }
    }
}
