//! Command-line front end: solver reports, the `T(n)` table, SVG figures
//! and the exact verification suites, each producing a [`ResultDocument`].

pub mod commands;
pub mod document;
pub mod pretty;
pub mod render;

use thiserror::Error;

pub use document::{Format, Output, ResultDocument};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("did not converge: {0}")]
    NonConvergence(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("i/o: {0}")]
    Io(String),
}

impl CliError {
    /// 1 usage (and I/O), 2 non-convergence, 3 verification failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 1,
            CliError::NonConvergence(_) => 2,
            CliError::Verification(_) => 3,
        }
    }
}
