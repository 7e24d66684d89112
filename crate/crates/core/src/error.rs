use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("substitution makes the denominator identically zero")]
    ZeroDenominator,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("elements belong to different algebras (sl({left}) vs sl({right}))")]
    AlgebraMismatch { left: usize, right: usize },

    #[error("singular matrix: {0}")]
    Singular(String),

    #[error("window overflow: exponent {exponent} outside [{lo}, {hi}]")]
    WindowOverflow { exponent: i64, lo: i64, hi: i64 },

    #[error("pole does not cancel: {0}")]
    PoleDoesNotCancel(String),

    #[error("elements are linearly dependent")]
    LinearlyDependent,

    #[error("postcondition failed: {0}")]
    Postcondition(String),

    #[error("calibration failed: {0}")]
    Calibration(String),

    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
