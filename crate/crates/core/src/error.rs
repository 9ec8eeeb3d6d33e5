use std::fmt;

use thiserror::Error;

/// Errors raised by the exploration engine and its data types.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown attribute `{0}`")]
    UnknownAttribute(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("attribute names must be non-empty")]
    EmptyName,
    #[error("universe mismatch: expected {expected} attributes, found {found}")]
    UniverseMismatch { expected: usize, found: usize },
    #[error("positive and negative attributes overlap: {0}")]
    Overlap(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// An expert answered in a way that contradicts what it confirmed earlier.
    #[error("inconsistent expert: {0}")]
    Inconsistent(String),
    #[error("answer rejected: {0}")]
    Rejected(Rejection),
    #[error("exploration aborted after {0} interactions without terminating")]
    IterationCap(usize),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// The precise reason an answer to a question was refused.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rejection {
    NoPendingQuestion,
    /// Some premise attributes are missing from the counterexample's positive part.
    PremiseNotCovered(Vec<String>),
    /// No conclusion attribute is excluded by the counterexample.
    ConclusionNotContradicted,
    Overlap(Vec<String>),
    /// Classical exploration needs full object descriptions.
    NotAFullDescription,
    /// The counterexample refutes an implication that was already confirmed.
    RefutesConfirmed(String),
    /// The counterexample contradicts knowledge that follows from the confirmed implications.
    ContradictsCertain(String),
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rejection::NoPendingQuestion => write!(f, "no question is awaiting an answer"),
            Rejection::PremiseNotCovered(missing) => {
                write!(f, "premise not covered: missing {}", missing.join(", "))
            }
            Rejection::ConclusionNotContradicted => write!(
                f,
                "conclusion not contradicted: no conclusion attribute is marked as absent"
            ),
            Rejection::Overlap(attrs) => {
                write!(f, "attributes marked both present and absent: {}", attrs.join(", "))
            }
            Rejection::NotAFullDescription => {
                write!(f, "classical exploration requires a full object description")
            }
            Rejection::RefutesConfirmed(imp) => {
                write!(f, "counterexample refutes confirmed implication {imp}")
            }
            Rejection::ContradictsCertain(detail) => {
                write!(f, "counterexample contradicts certain knowledge: {detail}")
            }
        }
    }
}

impl Rejection {
    /// Stable machine-readable code for the rejection kind.
    pub fn code(&self) -> &'static str {
        match self {
            Rejection::NoPendingQuestion => "no_pending_question",
            Rejection::PremiseNotCovered(_) => "premise_not_covered",
            Rejection::ConclusionNotContradicted => "conclusion_not_contradicted",
            Rejection::Overlap(_) => "overlap",
            Rejection::NotAFullDescription => "not_full_description",
            Rejection::RefutesConfirmed(_) => "refutes_confirmed",
            Rejection::ContradictsCertain(_) => "contradicts_certain",
        }
    }
}
