use thiserror::Error;

/// Errors raised by the solvers and the instance reader.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid instance: {0}")]
    Invalid(String),
    #[error("length mismatch: expected {expected}, got {actual} ({what})")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        actual: usize,
    },
    #[error("{what} index {index} out of range (limit {limit})")]
    OutOfRange {
        what: &'static str,
        index: usize,
        limit: usize,
    },
    #[error("vertex {vertex}: degree {degree} outside the function domain 0..={max}")]
    Domain { vertex: usize, degree: usize, max: usize },
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("edge count {m} out of range 0..={max}")]
    EdgeCount { m: usize, max: usize },
    #[error("{what} limit exceeded: {actual} > {limit}{hint}")]
    Limit {
        what: &'static str,
        actual: usize,
        limit: usize,
        hint: &'static str,
    },
    #[error("forest is not valid for the graph: edge {{{0},{1}}} joins unrelated vertices")]
    InvalidForest(usize, usize),
    #[error("malformed forest: {0}")]
    MalformedForest(String),
    #[error("assignment violates row {row}")]
    Violated { row: String },
    #[error("objective oracle failed: {0}")]
    Oracle(String),
}

impl Error {
    /// True for errors caused by malformed input documents rather than
    /// by solver preconditions or limits.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Syntax { .. } | Error::Invalid(_) | Error::LengthMismatch { .. } | Error::MalformedForest(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
