use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("quadratic has negative discriminant")]
    NegativeDiscriminant,

    #[error("quadratic leading coefficient must be positive")]
    NonPositiveLeadingCoefficient,

    /// Parameter `d` needs at least two distinct blocks.
    #[error("design parameters undefined: {0}")]
    UndefinedParameter(String),

    #[error("enumeration of {requested} subsets exceeds the limit of {limit}; raise the limit explicitly")]
    EnumerationLimit { requested: u128, limit: u128 },

    #[error("malformed design: {0}")]
    Malformed(String),

    #[error("design parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
