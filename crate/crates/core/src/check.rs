//! Outcome records produced by the verification routines.

use alloc::string::{String, ToString};

use crate::error::Error;

/// Result of one named check.
#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    Pass,
    /// Algebraic mismatch; `residual` is the canonical text of what should
    /// have vanished.
    Fail { residual: String },
    /// Preconditions unsatisfiable (e.g. off-lattice data).
    Skipped { reason: String },
    /// The degree cap was hit before the check could finish.
    Overflow { message: String },
    /// Any other engine error.
    Error { message: String },
}

impl Outcome {
    pub fn is_pass(&self) -> bool {
        matches!(self, Outcome::Pass)
    }

    pub fn is_failure(&self) -> bool {
        matches!(self, Outcome::Fail { .. } | Outcome::Overflow { .. } | Outcome::Error { .. })
    }

    pub fn status(&self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Skipped { .. } => "skipped",
            _ => "fail",
        }
    }

    /// Failure kind for non-passing outcomes.
    pub fn kind(&self) -> Option<&'static str> {
        match self {
            Outcome::Pass | Outcome::Skipped { .. } => None,
            Outcome::Fail { .. } => Some("mismatch"),
            Outcome::Overflow { .. } => Some("degree-cap"),
            Outcome::Error { .. } => Some("error"),
        }
    }

    pub fn fail(residual: impl ToString) -> Self {
        Outcome::Fail { residual: residual.to_string() }
    }

    pub fn from_bool(ok: bool, residual: impl FnOnce() -> String) -> Self {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail { residual: residual() }
        }
    }
}

impl From<Error> for Outcome {
    fn from(e: Error) -> Self {
        match e {
            Error::DegreeLimit(m) => Outcome::Overflow { message: m },
            Error::OffLattice(m) => Outcome::Skipped { reason: m },
            other => Outcome::Error { message: other.to_string() },
        }
    }
}

/// A named check with its citation anchor and outcome.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub anchor: String,
    pub outcome: Outcome,
    /// Extra information, e.g. an observed proportionality factor.
    pub note: Option<String>,
}

impl Check {
    pub fn new(name: impl ToString, anchor: impl ToString, outcome: Outcome) -> Self {
        Check { name: name.to_string(), anchor: anchor.to_string(), outcome, note: None }
    }

    pub fn with_note(mut self, note: impl ToString) -> Self {
        self.note = Some(note.to_string());
        self
    }

    /// Wraps a fallible computation; errors become failure outcomes.
    pub fn run(name: impl ToString, anchor: impl ToString, f: impl FnOnce() -> crate::Result<Outcome>) -> Self {
        let outcome = match f() {
            Ok(o) => o,
            Err(e) => e.into(),
        };
        Check::new(name, anchor, outcome)
    }

    pub fn passed(&self) -> bool {
        self.outcome.is_pass()
    }
}
