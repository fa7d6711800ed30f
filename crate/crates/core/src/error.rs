use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),

    #[error("operands live over different alphabets")]
    AlphabetMismatch,

    #[error("truncation mismatch: {0} vs {1}")]
    TruncationMismatch(usize, usize),

    #[error("truncation {got} is too small, need at least {needed}")]
    TruncationTooSmall { needed: usize, got: usize },

    #[error("element is not homogeneous of degree {expected}")]
    NotHomogeneous { expected: i32 },

    #[error("alphabet has no generator named {0:?}")]
    UnknownGenerator(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("inductive step {step}: cycle is not a multiple of the boundary")]
    ProportionalityFailed { step: usize },

    #[error("inductive step {step}: odd-step cycle does not vanish")]
    OddCycleNonzero { step: usize },

    #[error("element is not in the span of the mu basis")]
    NotInSpan,

    #[error("unknown check {0:?}")]
    UnknownCheck(String),
}

pub type Result<T> = std::result::Result<T, Error>;
