use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("elements belong to different number fields")]
    FieldMismatch,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("polynomials live in different rings")]
    RingMismatch,

    #[error("Groebner basis budget exhausted after {reductions} pair reductions")]
    BudgetExhausted { reductions: u64 },

    #[error("oracle search space {size} exceeds ceiling {ceiling}")]
    OracleCeiling { size: u128, ceiling: u128 },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
