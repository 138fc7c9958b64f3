//! Chord-color propagation over a rainbow ambient cycle.
//!
//! The ambient cycle has `M` vertices and perimeter edge `(i, i+1)` colored
//! `i`. Every `n`-cycle through the ring must be non-rainbow, which restricts
//! the colors chords may take; a cycle whose edges end up with pairwise
//! disjoint allowed sets is forced rainbow, which is the contradiction the
//! witness constructions aim for.

mod colorset;
mod lemmas;
mod ring;
mod store;
mod walk;

use thiserror::Error;

pub use colorset::{Arc, ColorSet};
pub use lemmas::{
    div4_chain, even_chain, lemma_div4_chain, lemma_even_chain, ChainCase, ChainStage, ChordFamily,
    FamilyCollision, LemmaChain, ScriptStep,
};
pub use ring::{AmbientRing, Edge, Symmetry};
pub use store::{ConstraintStore, ContradictionCertificate, Deduction, Refinement, WitnessPair};
pub use walk::Walk;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GadgetError {
    #[error("walk does not close: step sum is {residue} mod M")]
    NotClosed { residue: u32 },
    #[error("walk revisits vertex {vertex} at position {index}")]
    RepeatedVertex { vertex: u32, index: usize },
    #[error("a cycle needs at least 3 edges, got {0}")]
    TooShort(usize),
    #[error(
        "edges {first} and {second} have intersecting allowed sets; the deduction would be unsound"
    )]
    PreconditionViolated { first: Edge, second: Edge },
    #[error("no color is left for edge {edge}")]
    Contradiction { edge: Edge },
    #[error("perimeter edge {edge} has a fixed color")]
    PerimeterEdge { edge: Edge },
    #[error("script step {step} failed: expected {expected}, got {got}")]
    ScriptStepFailed {
        step: String,
        expected: String,
        got: String,
    },
    #[error("{0}")]
    ChainPrecondition(String),
}
