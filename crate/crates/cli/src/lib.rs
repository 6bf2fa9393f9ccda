//! The `foxbarnes` command-line tool: parameter documents, single-point and
//! grid evaluation, contour classification reports and CSV output.
//!
//! Exit codes: `0` success, `2` parse or parameter-file error, `3` domain
//! error, `4` no convergent contour (the report is still printed), `5`
//! evaluation failure.

pub mod commands;
pub mod document;
pub mod output;

use foxbarnes::Error;

/// Failure of a command, carrying its exit code.
#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// Malformed arguments or parameter file.
    Parse(String),
    /// Failure reported by the library.
    Eval(Error),
    /// Output could not be written.
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Eval(e) => match e {
                Error::NoConvergentContour(_) => 4,
                Error::TruncationFailure(_) | Error::QuadratureFailure(_) | Error::NonSimplePole { .. } => 5,
                _ => 3,
            },
            CliError::Io(_) => 5,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Eval(e) => write!(f, "{e}"),
            CliError::Io(m) => write!(f, "output error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Eval(e)
    }
}
