use attrex::Rejection;
use serde::Serialize;
use thiserror::Error;

/// One problem with a submitted session configuration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FieldError {
    pub field: String,
    pub message: String,
}

impl FieldError {
    pub fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        FieldError {
            field: field.into(),
            message: message.into(),
        }
    }
}

#[derive(Debug, Error)]
pub enum ServiceError {
    #[error("invalid session configuration: {}", summarize(.0))]
    InvalidConfig(Vec<FieldError>),
    #[error("no session `{0}`")]
    NotFound(String),
    #[error("answer rejected: {0}")]
    Rejected(Rejection),
    #[error("invalid answer: {0}")]
    InvalidAnswer(String),
    #[error("conflict: {0}")]
    Conflict(String),
    #[error("unknown export format `{0}`; expected json, cxt or implications")]
    UnknownFormat(String),
    #[error("bad request: {0}")]
    BadRequest(String),
    #[error("session log line {line}: {message}")]
    Log { line: usize, message: String },
    #[error("storage: {0}")]
    Storage(#[from] std::io::Error),
    #[error("internal error: {0}")]
    Internal(String),
}

fn summarize(errors: &[FieldError]) -> String {
    errors
        .iter()
        .map(|e| format!("{}: {}", e.field, e.message))
        .collect::<Vec<_>>()
        .join("; ")
}

impl ServiceError {
    /// Machine-readable error code used in HTTP error bodies.
    pub fn code(&self) -> &'static str {
        match self {
            ServiceError::InvalidConfig(_) => "invalid_config",
            ServiceError::NotFound(_) => "not_found",
            ServiceError::Rejected(_) => "rejected_answer",
            ServiceError::InvalidAnswer(_) => "invalid_answer",
            ServiceError::Conflict(_) => "conflict",
            ServiceError::UnknownFormat(_) => "unknown_format",
            ServiceError::BadRequest(_) => "bad_request",
            ServiceError::Log { .. } => "corrupt_log",
            ServiceError::Storage(_) => "storage",
            ServiceError::Internal(_) => "internal",
        }
    }
}

pub type Result<T, E = ServiceError> = std::result::Result<T, E>;
