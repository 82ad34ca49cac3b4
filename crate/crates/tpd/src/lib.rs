//! Command-line frontend for `tpd-core`: input grammars, layered
//! configuration, the triple-point analysis report and a self-check.
//!
//! Every run ends in one of five exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success |
//! | 1 | unparsable input or configuration |
//! | 2 | not applicable, out of scope, unsupported or precondition failed |
//! | 3 | Monte-Carlo trials disagreed (the result is still printed) |
//! | 4 | self-check failure or internal error |

pub mod commands;
pub mod config;
pub mod report;
pub mod verify;

use std::fmt;

use tpd_core::Error;

pub use commands::run;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_NOT_APPLICABLE: i32 = 2;
pub const EXIT_DISAGREEMENT: i32 = 3;
pub const EXIT_FAILURE: i32 = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Parse(String),
    Core(Error),
    VerifyFailed(String),
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => EXIT_PARSE,
            CliError::Core(e) => match e {
                Error::Parse { .. } | Error::UnknownSymbol(_) | Error::DimensionMismatch { .. } | Error::InvalidInput(_) => {
                    EXIT_PARSE
                }
                Error::NotApplicable(_)
                | Error::OutOfScope(_)
                | Error::Unsupported(_)
                | Error::Precondition(_)
                | Error::WrongMultiplicity { .. }
                | Error::TruncationTooLow { .. } => EXIT_NOT_APPLICABLE,
            },
            CliError::VerifyFailed(_) | CliError::Internal(_) => EXIT_FAILURE,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::VerifyFailed(m) => write!(f, "verification failed: {m}"),
            CliError::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}
