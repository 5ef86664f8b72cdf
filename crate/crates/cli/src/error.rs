use thiserror::Error;

/// Exit status for each failure class; see the table in the README.
pub mod exit {
    pub const OK: i32 = 0;
    pub const IO: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const INPUT: i32 = 3;
    pub const BUDGET: i32 = 4;
    pub const CEILING: i32 = 5;
    pub const MISMATCH: i32 = 6;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("job document: {0}")]
    Json(#[from] serde_json::Error),

    #[error("job document: {0}")]
    Job(String),

    #[error(transparent)]
    Core(#[from] firstint::Error),

    /// A check ran to completion and disagreed with its reference.
    #[error("{0}")]
    Mismatch(String),
}

impl CliError {
    pub fn job(msg: impl Into<String>) -> Self {
        CliError::Job(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => exit::IO,
            CliError::Json(_) | CliError::Job(_) => exit::INPUT,
            CliError::Core(e) => match e {
                firstint::Error::BudgetExhausted { .. } => exit::BUDGET,
                firstint::Error::OracleCeiling { .. } => exit::CEILING,
                _ => exit::INPUT,
            },
            CliError::Mismatch(_) => exit::MISMATCH,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
