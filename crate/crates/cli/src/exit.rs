use std::process::ExitCode;

use extensia_core::{Error, TruthError};

/// Process exit statuses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    Usage = 1,
    Syntax = 2,
    Restriction = 3,
    Budget = 4,
    Internal = 5,
}

impl From<Status> for ExitCode {
    fn from(s: Status) -> Self {
        ExitCode::from(s as u8)
    }
}

pub fn status_of(e: &Error) -> Status {
    match e {
        Error::Syntax(_)
        | Error::Compile(_)
        | Error::Type(_)
        | Error::TypeMismatch(_)
        | Error::UnboundVariable(_) => Status::Syntax,
        Error::InfiniteUniverse(_)
        | Error::NonEnumerableType { .. }
        | Error::NotNormalFragment(_) => Status::Restriction,
        Error::BudgetExceeded { .. }
        | Error::DomainTooLarge { .. }
        | Error::Truth(TruthError::LevelOverflow { .. }) => Status::Budget,
        Error::Truth(TruthError::ZeroKappa) | Error::Truth(TruthError::Parse(_)) => Status::Usage,
        _ => Status::Internal,
    }
}

/// A failure with the status it maps to.
#[derive(Debug)]
pub struct Failure {
    pub status: Status,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Failure {
        Failure {
            status: Status::Usage,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            status: status_of(&e),
            message: e.to_string(),
        }
    }
}
