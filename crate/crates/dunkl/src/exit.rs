//! Exit codes of the command-line tool and the error type that carries them.

use std::fmt;

use dunkl_core::Error;

/// Process exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Code {
    /// Success, and for `verify` every check passed.
    Ok = 0,
    /// A verification check failed, or an internal error occurred.
    Failure = 1,
    /// Malformed flags or arguments.
    Usage = 2,
    /// Degenerate multiplicity.
    Degenerate = 3,
    /// Arguments outside the domain of the requested object.
    Domain = 4,
    /// The accuracy budget was not met.
    Accuracy = 5,
}

/// An error with the exit code it maps to.
#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub code: Code,
    pub message: String,
}

impl CliError {
    pub fn usage(message: String) -> Self {
        Self { code: Code::Usage, message }
    }

    pub fn accuracy(message: String) -> Self {
        Self { code: Code::Accuracy, message }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::VariableMismatch { .. } | Error::InvalidInput(_) => Code::Usage,
            Error::Degenerate(_) => Code::Degenerate,
            Error::Pole(_) | Error::Domain(_) | Error::MirrorProximity { .. } => Code::Domain,
            Error::Accuracy(_) => Code::Accuracy,
            Error::Internal(_) => Code::Failure,
        };
        Self { code, message: e.to_string() }
    }
}
