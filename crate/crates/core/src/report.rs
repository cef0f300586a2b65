//! Check reports and computation budgets shared by the verification suites.

use std::fmt;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
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

#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub wall_ms: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub suite: String,
    pub model: String,
    pub checks: Vec<CheckRecord>,
}

impl CheckReport {
    pub fn new(suite: impl Into<String>, model: impl Into<String>) -> Self {
        CheckReport {
            suite: suite.into(),
            model: model.into(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, id: impl Into<String>, status: Status, witness: Option<String>, wall: Duration) {
        self.checks.push(CheckRecord {
            id: id.into(),
            status,
            witness,
            wall_ms: wall.as_secs_f64() * 1e3,
        });
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    /// FAIL dominates SKIPPED, which dominates PASS.
    pub fn overall(&self) -> Status {
        if self.count(Status::Fail) > 0 {
            Status::Fail
        } else if self.count(Status::Skipped) > 0 {
            Status::Skipped
        } else {
            Status::Pass
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("suite: {}\nmodel: {}\n", self.suite, self.model);
        for c in &self.checks {
            out.push_str(&format!("{:<7} {} ({:.1} ms)\n", c.status.to_string(), c.id, c.wall_ms));
            if let Some(w) = &c.witness {
                out.push_str(&format!("        witness: {w}\n"));
            }
        }
        out.push_str(&format!(
            "{}: {} checks, {} passed, {} failed, {} skipped\n",
            self.overall(),
            self.checks.len(),
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Skipped)
        ));
        out
    }
}

/// Upper bound on wall time and/or expression size.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Budget {
    pub max_seconds: Option<f64>,
    pub max_terms: Option<usize>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    /// `"30"` or `"2.5s"` bound seconds; `"5000terms"` bounds expression size.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(n) = s.strip_suffix("terms") {
            let n = n
                .trim()
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad term budget `{s}`")))?;
            return Ok(Budget {
                max_seconds: None,
                max_terms: Some(n),
            });
        }
        let n: f64 = s
            .strip_suffix('s')
            .unwrap_or(s)
            .trim()
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad budget `{s}`")))?;
        if !(n >= 0.0) {
            return Err(Error::InvalidArgument(format!("bad budget `{s}`")));
        }
        Ok(Budget {
            max_seconds: Some(n),
            max_terms: None,
        })
    }

    pub fn start(self) -> BudgetClock {
        BudgetClock {
            budget: self,
            start: Instant::now(),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct BudgetClock {
    budget: Budget,
    start: Instant,
}

impl BudgetClock {
    pub fn elapsed(&self) -> Duration {
        self.start.elapsed()
    }

    pub fn time_exceeded(&self) -> bool {
        self.budget
            .max_seconds
            .is_some_and(|s| self.start.elapsed().as_secs_f64() >= s)
    }

    pub fn terms_exceeded(&self, terms: usize) -> bool {
        self.budget.max_terms.is_some_and(|t| terms > t)
    }

    pub fn check(&self, terms: usize) -> Result<()> {
        if self.time_exceeded() {
            return Err(Error::BudgetExceeded(format!(
                "time limit of {:?} s reached",
                self.budget.max_seconds.unwrap_or_default()
            )));
        }
        if self.terms_exceeded(terms) {
            return Err(Error::BudgetExceeded(format!(
                "expression with {terms} terms exceeds the limit"
            )));
        }
        Ok(())
    }
}
