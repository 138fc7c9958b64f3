//! Witness cycles for the even and doubly-even cases.
//!
//! A witness is an `n`-cycle on the ambient ring built from forward steps of a
//! few lengths, whose edges have pairwise disjoint allowed colors under the
//! derived chord families. This module builds them deterministically, finds
//! them by backtracking, parses them from compact notation and certifies them.

mod backtrack;
mod certificate;
mod compact;
mod construct;
mod family;
mod multiset;

use thiserror::Error;

use crate::gadget::GadgetError;

pub use backtrack::{
    backtrack_search, backtrack_search_with_progress, SearchOptions, SearchOutcome, SearchReport,
    DEFAULT_NODE_BUDGET,
};
pub use certificate::{verify_cycle, CycleCertificate};
pub use compact::{parse_compact, parse_vertex_cycle};
pub use construct::{
    check_inequalities_div4, construct_div4, construct_even, ConstructionTrace, Div4Parameters,
    InequalityReport, X_SET,
};
pub use family::{ConstraintFamily, FamilyId};
pub use multiset::{div4_multiset, even_multiset, StepMultiset};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("{0}")]
    Precondition(String),
    #[error("inequalities failed: {}", .0.join(", "))]
    InequalityFailed(Vec<String>),
    #[error("construction invariant failed: {0}")]
    ConstructionInvariant(String),
    #[error("parse error at token {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("stated vertex {stated} after group {group} but the walk is at {actual}")]
    VertexMismatch {
        group: usize,
        stated: i64,
        actual: i64,
    },
    #[error(transparent)]
    Gadget(#[from] GadgetError),
}

pub type Result<T> = std::result::Result<T, SearchError>;
