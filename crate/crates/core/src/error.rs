use thiserror::Error;

/// Errors raised by the library.
///
/// The variants are grouped the way the command line front end reports them:
/// malformed input, violated preconditions and arithmetic overflow.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed input: {0}")]
    MalformedInput(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("cochain is not a cocycle: {0}")]
    NotCocycle(String),

    #[error("class is not in the span of the supplied basis")]
    NotInSpan,

    #[error("not a zero divisor: {0}")]
    NotZeroDivisor(String),

    #[error("recursion depth {0} exceeded while evaluating a collapsing-vertex predicate")]
    RecursionLimit(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }

    pub(crate) fn malformed(msg: impl Into<String>) -> Self {
        Error::MalformedInput(msg.into())
    }
}

pub(crate) fn checked_add(a: i64, b: i64, ctx: &'static str) -> Result<i64> {
    a.checked_add(b).ok_or(Error::Overflow(ctx))
}

pub(crate) fn checked_mul(a: i64, b: i64, ctx: &'static str) -> Result<i64> {
    a.checked_mul(b).ok_or(Error::Overflow(ctx))
}
