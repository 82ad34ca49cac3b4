use alloc::string::String;
use core::fmt;

/// Errors produced by the core library.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// A divisor or vector does not match the surface's basis size.
    DimensionMismatch { expected: usize, found: usize },
    /// Input text could not be parsed.
    Parse { position: usize, message: String },
    /// A basis symbol that the surface does not know.
    UnknownSymbol(String),
    /// The request lies outside the range the operation covers.
    OutOfScope(String),
    /// The surface family does not support the operation.
    Unsupported(String),
    /// The numerical hypothesis of the construction is not met.
    NotApplicable(String),
    /// The germ does not have multiplicity three at the origin.
    WrongMultiplicity { found: Option<u32> },
    /// A stated precondition of the operation fails.
    Precondition(String),
    /// The truncation degree is too low for the computation; raise it.
    TruncationTooLow { truncation: u32 },
    /// Structurally invalid input (bad multiplicity, too many points, ...).
    InvalidInput(String),
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected} coefficients, found {found}")
            }
            Error::Parse { position, message } => {
                write!(f, "parse error at position {position}: {message}")
            }
            Error::UnknownSymbol(s) => write!(f, "unknown basis symbol `{s}`"),
            Error::OutOfScope(s) => write!(f, "out of scope: {s}"),
            Error::Unsupported(s) => write!(f, "unsupported: {s}"),
            Error::NotApplicable(s) => write!(f, "not applicable: {s}"),
            Error::WrongMultiplicity { found: Some(m) } => {
                write!(f, "germ has multiplicity {m}, expected 3")
            }
            Error::WrongMultiplicity { found: None } => {
                write!(f, "germ vanishes to the truncation order, expected multiplicity 3")
            }
            Error::Precondition(s) => write!(f, "precondition failed: {s}"),
            Error::TruncationTooLow { truncation } => {
                write!(f, "truncation N = {truncation} is too low; raise the truncation")
            }
            Error::InvalidInput(s) => write!(f, "invalid input: {s}"),
        }
    }
}

impl core::error::Error for Error {}
