use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("field of order {0} exceeds the supported maximum of 65536")]
    FieldTooLarge(u64),

    #[error("inverse of zero")]
    ZeroInverse,

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("operands belong to different {0}")]
    Mismatch(&'static str),

    #[error("no polynomial of degree {h} over GF({q}) avoids all {n} points")]
    Impossible { q: u64, n: u64, h: u64 },

    #[error("unsupported parameters: {0}")]
    Unsupported(String),

    #[error("enumeration of {required} items exceeds the budget of {budget}")]
    BudgetExceeded { required: u128, budget: u64 },

    #[error("exhausted: {0}")]
    Exhausted(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
