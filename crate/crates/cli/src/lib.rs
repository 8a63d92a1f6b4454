//! Command-line layer over `anosov-core`: JSON reports, comparisons,
//! expansions, Bratteli diagrams in DOT and the census.

pub mod census;
pub mod commands;
pub mod report;

use anosov_core::Error;
use serde::Serialize;

/// Iteration budget when `INVARIANT_MAX_STEPS` is unset.
pub const DEFAULT_MAX_STEPS: usize = 200;

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or unparseable matrix text.
    Usage(String),
    /// Rejected by the exact pipeline.
    Core(Error),
    /// An exact value too large for the JSON integer fields.
    Overflow(String),
    Io(String),
}

#[derive(Serialize)]
struct ErrorJson<'a> {
    error: &'a str,
    message: String,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(Error::BudgetExhausted(_)) | CliError::Overflow(_) => 4,
            CliError::Core(_) => 3,
            CliError::Io(_) => 1,
        }
    }

    pub fn code(&self) -> &str {
        match self {
            CliError::Usage(_) => "Usage",
            CliError::Core(e) => e.code(),
            CliError::Overflow(_) => "Overflow",
            CliError::Io(_) => "Io",
        }
    }

    pub fn message(&self) -> String {
        match self {
            CliError::Usage(m) | CliError::Io(m) => m.clone(),
            CliError::Core(e) => e.to_string(),
            CliError::Overflow(v) => format!("value {v} does not fit in a 64-bit integer"),
        }
    }

    /// Structured form printed on stdout for domain errors.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&ErrorJson {
            error: self.code(),
            message: self.message(),
        })
        .expect("error JSON serializes")
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.code(), self.message())
    }
}

impl std::error::Error for CliError {}

/// Budget from `INVARIANT_MAX_STEPS`, else [`DEFAULT_MAX_STEPS`].
pub fn max_steps_from_env() -> Result<usize, CliError> {
    match std::env::var("INVARIANT_MAX_STEPS") {
        Ok(v) => v.trim().parse().map_err(|_| {
            CliError::Usage(format!(
                "INVARIANT_MAX_STEPS must be a non-negative integer, got {v:?}"
            ))
        }),
        Err(_) => Ok(DEFAULT_MAX_STEPS),
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}
