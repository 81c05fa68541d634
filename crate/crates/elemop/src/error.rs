//! Error type shared by every module of the crate.

use std::fmt;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Failure modes of the numerical laboratory.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Shape or length of an input does not match what the operation needs.
    Dimension(String),
    /// A result matrix would exceed the configured size cap.
    Capacity { rows: usize, cols: usize, cap: usize },
    /// An iterative method ran out of its iteration budget.
    Convergence { what: String, iterations: usize },
    /// An input violates a stated precondition (non-Hermitian, non-commuting, ...).
    Precondition { what: String, residual: f64 },
    /// Invalid run configuration (zero restarts, bad flag combination, ...).
    Config(String),
    /// Malformed input data (JSON, atom lists, number parsing).
    Parse(String),
    /// Underlying I/O failure.
    Io(String),
}

impl Error {
    /// Process exit code: 2 for usage/input problems, 3 for numeric failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::Parse(_) | Error::Io(_) => 2,
            Error::Dimension(_)
            | Error::Capacity { .. }
            | Error::Convergence { .. }
            | Error::Precondition { .. } => 3,
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Dimension(msg) => write!(f, "dimension error: {msg}"),
            Error::Capacity { rows, cols, cap } => write!(
                f,
                "capacity error: result would be {rows}x{cols}, exceeding the cap {cap}"
            ),
            Error::Convergence { what, iterations } => {
                write!(f, "convergence error: {what} after {iterations} iterations")
            }
            Error::Precondition { what, residual } => {
                write!(f, "precondition error: {what} (residual {residual:e})")
            }
            Error::Config(msg) => write!(f, "config error: {msg}"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
            Error::Io(msg) => write!(f, "io error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
