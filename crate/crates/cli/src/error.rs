use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("no {kind} named {name:?}")]
    NameNotFound { kind: &'static str, name: String },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Budget(String),
    #[error("{0}")]
    Invalid(String),
}

impl CliError {
    pub fn invalid(message: String) -> Self {
        CliError::Invalid(message)
    }

    /// 1 for data that parses but fails a check, 2 for everything the user
    /// has to fix in the invocation or the file syntax.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => 1,
            _ => 2,
        }
    }
}
