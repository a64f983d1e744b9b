//! Error types.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("zero polynomial has no normal form")]
    ZeroPolynomial,
    #[error("dimension error: {0}")]
    Dimension(String),
    #[error("twist error: {0}")]
    Twist(String),
    #[error("internal algebra error: {0}")]
    Internal(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{path}: {message} (at offset {offset} in {text:?})")]
pub struct ParseError {
    pub path: String,
    pub text: String,
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    pub fn at(text: &str, offset: usize, message: impl Into<String>) -> Self {
        ParseError { path: String::new(), text: text.to_string(), offset, message: message.into() }
    }

    pub fn with_path(mut self, path: impl Into<String>) -> Self {
        self.path = path.into();
        self
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NahmError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("{0}")]
    Condition(String),
    #[error("not representable over Q(i): {0}")]
    Representability(String),
    #[error("weight overflow, input outside the supported range: {0}")]
    WeightOverflow(String),
    #[error("ambiguous branch matching: {0}")]
    Ambiguous(String),
    #[error("unsupported configuration: {0}")]
    Unsupported(String),
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

impl NahmError {
    /// Process exit code: 1 for input problems, 2 for internal inconsistencies.
    pub fn exit_code(&self) -> i32 {
        match self {
            NahmError::Inconsistency(_) | NahmError::Algebra(AlgebraError::Internal(_)) => 2,
            _ => 1,
        }
    }
}

pub type Result<T, E = NahmError> = std::result::Result<T, E>;
