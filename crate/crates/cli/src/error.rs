use std::fmt;
use std::process::ExitCode;

use dacr::io::FormatError;
use dacr::Error;

/// Process exit status of a command.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    Invalid = 1,
    Schema = 2,
    Degenerate = 3,
    Dimension = 4,
    Filter = 5,
}

impl From<Status> for ExitCode {
    fn from(s: Status) -> Self {
        ExitCode::from(s as u8)
    }
}

#[derive(Debug)]
pub struct CliError {
    pub status: Status,
    pub message: String,
}

impl CliError {
    pub fn schema(message: impl Into<String>) -> Self {
        Self {
            status: Status::Schema,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::DegenerateArrangement { .. } => Status::Degenerate,
            Error::DimensionMismatch { .. }
            | Error::ConventionMismatch { .. }
            | Error::CouplingMismatch { .. }
            | Error::MissingJoint(_) => Status::Dimension,
            Error::FilterPropertyUnavailable(..) => Status::Filter,
            Error::OffManifold { .. } => Status::Invalid,
            Error::Domain(_)
            | Error::UnsupportedArrangement(_)
            | Error::ArrangementMismatch { .. }
            | Error::InvalidRobot(_) => Status::Schema,
        };
        Self {
            status,
            message: e.to_string(),
        }
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        Self::schema(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
