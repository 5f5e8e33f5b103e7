use thiserror::Error;

/// Errors raised by the exact-arithmetic engine and everything built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("series is zero up to its truncation order")]
    ZeroSeries,

    #[error("inner series of a composition must have zero constant term")]
    NonzeroConstantTerm,

    #[error("insufficient precision: requested order {requested}, inputs only determine order {available}")]
    InsufficientPrecision { requested: i32, available: i32 },

    #[error("pole: {context} (index {index})")]
    Pole { index: usize, context: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("numerator degree {numerator} exceeds denominator degree {denominator}")]
    Degree { numerator: usize, denominator: usize },

    #[error("denominator slope is zero")]
    ZeroSlope,

    #[error("repeated root at eps = {location}: factor ({q1}, {j1}) collides with factor ({q2}, {j2})")]
    RepeatedRoot {
        location: String,
        q1: usize,
        j1: usize,
        q2: usize,
        j2: usize,
    },

    #[error("missing parameter '{0}'")]
    MissingParameter(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
