//! Run reports, input digests and exit codes.

use std::time::Instant;

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

/// Exit code of a definite verdict.
pub const EXIT_DEFINITE: u8 = 0;
/// Exit code of usage, parse and precondition errors.
pub const EXIT_USAGE: u8 = 1;
/// Exit code of unknown verdicts and exhausted budgets.
pub const EXIT_UNKNOWN: u8 = 2;
/// Exit code of internal invariant failures.
pub const EXIT_INTERNAL: u8 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Lib(#[from] orbitkit::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use orbitkit::Error as E;
        match self {
            CliError::Usage(_) | CliError::Io(_) => EXIT_USAGE,
            CliError::Lib(E::ExplorationBound(_) | E::Budget(_)) => EXIT_UNKNOWN,
            CliError::Lib(E::Internal(_)) => EXIT_INTERNAL,
            CliError::Lib(_) => EXIT_USAGE,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self.exit_code() {
            EXIT_UNKNOWN => "budget",
            EXIT_INTERNAL => "internal",
            _ => "usage",
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Definite,
    Unknown,
    Internal,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Definite => EXIT_DEFINITE,
            Status::Unknown => EXIT_UNKNOWN,
            Status::Internal => EXIT_INTERNAL,
        }
    }
}

/// Result of one subcommand before rendering.
#[derive(Debug)]
pub struct Outcome {
    pub status: Status,
    pub verdict: Value,
    pub text: String,
    pub dot: Option<String>,
    pub budget_spent: Option<u64>,
}

impl Outcome {
    pub fn definite(verdict: Value, text: impl Into<String>) -> Self {
        Self {
            status: Status::Definite,
            verdict,
            text: text.into(),
            dot: None,
            budget_spent: None,
        }
    }

    pub fn unknown(verdict: Value, text: impl Into<String>) -> Self {
        Self {
            status: Status::Unknown,
            ..Self::definite(verdict, text)
        }
    }

    pub fn with_dot(mut self, dot: String) -> Self {
        self.dot = Some(dot);
        self
    }

    pub fn with_budget(mut self, spent: usize) -> Self {
        self.budget_spent = Some(spent as u64);
        self
    }
}

/// Collects everything that determines a run's inputs.
pub struct Inputs {
    hasher: Sha256,
    start: Instant,
}

impl Inputs {
    pub fn new(args: &[String]) -> Self {
        let mut hasher = Sha256::new();
        for a in args {
            hasher.update(a.as_bytes());
            hasher.update([0]);
        }
        Self {
            hasher,
            start: Instant::now(),
        }
    }

    pub fn add(&mut self, bytes: &[u8]) {
        self.hasher.update((bytes.len() as u64).to_le_bytes());
        self.hasher.update(bytes);
    }

    pub fn finish(self) -> (String, u128) {
        let digest = self.hasher.finalize();
        let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        (hex, self.start.elapsed().as_millis())
    }
}

pub fn run_report(subcommand: &str, digest: &str, wall_ms: u128, outcome: &Outcome) -> Value {
    json!({
        "subcommand": subcommand,
        "inputs_digest": digest,
        "verdict": outcome.verdict,
        "budget_spent": outcome.budget_spent,
        "wall_time_ms": wall_ms as u64,
    })
}

pub fn error_report(subcommand: &str, digest: &str, wall_ms: u128, err: &CliError) -> Value {
    json!({
        "subcommand": subcommand,
        "inputs_digest": digest,
        "verdict": { "kind": "error", "error": err.kind(), "message": err.to_string() },
        "budget_spent": Value::Null,
        "wall_time_ms": wall_ms as u64,
    })
}
