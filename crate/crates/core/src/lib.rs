//! Attribute exploration for formal concept analysis.
//!
//! The crate covers formal contexts and their derivation operators,
//! implications with linear-time closure, generic closure operators,
//! Next-Closure, partial contexts, expert contracts, the classical and the
//! general exploration loops, and canonical bases.
//!
//! ```
//! use attrex::{canonical_base, AttributeUniverse, FormalContext};
//!
//! let m = AttributeUniverse::new(["a", "b", "c"]).unwrap();
//! let ctx = FormalContext::from_named_rows(m, &[("h1", &["a"][..]), ("h2", &["b"])]).unwrap();
//! let base = canonical_base(&ctx);
//! assert_eq!(base.len(), 2);
//! ```

pub mod canonical;
pub mod closure;
pub mod context;
pub mod error;
pub mod expert;
pub mod exploration;
pub mod implication;
pub mod io;
pub mod lectic;
pub mod partial;
pub mod set;
pub mod universe;

pub use canonical::{canonical_base, pseudo_intents, relative_canonical_base, BaseReport, CanonicalBase};
pub use closure::{
    check_closure_laws, pseudoclosed_sets, relative_pseudoclosed, ClosureOperator, LawReport,
    LawViolation, OperatorSource, PseudoclosedFamily,
};
pub use context::FormalContext;
pub use error::{Error, Rejection, Result};
pub use expert::{
    adversarial_pair, audit_consistency, malformed_entries, oracle_full, oracle_partial,
    AuditViolation, ContextOracle, Expert, ExpertLog, ExpertReply, LogEntry, MaskedExpert,
    ScriptedExpert,
};
pub use exploration::{
    check_termination_condition, explore_classical, explore_general, ClassicalExplorer,
    ClassicalOutcome, ExplorationResult, ExplorationState, ExplorationTrace, ExploreOptions,
    Explorer, Outcome, Strategy, TraceEvent,
};
pub use implication::{Implication, ImplicationSet};
pub use lectic::{enumerate_closed, lectic_cmp, next_closed};
pub use partial::{PartialContext, PartialObjectDescription};
pub use set::{AttrSet, BitSet, ObjSet};
pub use universe::{AttributeUniverse, Universe};
