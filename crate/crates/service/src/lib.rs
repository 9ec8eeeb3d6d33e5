//! Session service for attribute exploration: validated session
//! configurations, replayable JSON-lines session logs, an HTTP API for an
//! expert front end, and the `attrex` command line.

pub mod api;
pub mod cli;
pub mod config;
pub mod error;
pub mod session;
pub mod store;

pub use config::{Mode, PriorExamples, SessionConfig};
pub use error::{FieldError, ServiceError};
pub use session::{Answer, ExportFormat, QuestionView, Session, StateView, Status};
pub use store::Store;
