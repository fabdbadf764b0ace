use std::fmt;

/// Process exit status for each failure class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitKind {
    Validation = 2,
    Constraint = 3,
    Io = 4,
}

#[derive(Debug)]
pub struct Failure {
    pub kind: ExitKind,
    pub error: anyhow::Error,
}

impl Failure {
    pub fn validation(error: impl Into<anyhow::Error>) -> Self {
        Failure {
            kind: ExitKind::Validation,
            error: error.into(),
        }
    }

    pub fn constraint(error: impl Into<anyhow::Error>) -> Self {
        Failure {
            kind: ExitKind::Constraint,
            error: error.into(),
        }
    }

    pub fn io(error: impl Into<anyhow::Error>) -> Self {
        Failure {
            kind: ExitKind::Io,
            error: error.into(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.kind as i32
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#}", self.error)
    }
}

impl From<maxplus_gait::Error> for Failure {
    fn from(e: maxplus_gait::Error) -> Self {
        Failure::validation(e)
    }
}

pub type CliResult<T> = Result<T, Failure>;
