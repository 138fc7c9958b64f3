//! Rainbow-cycle spectra of edge-colored complete graphs.
//!
//! * [`semigroup`]: numerical semigroup arithmetic (periods, progression
//!   conductors, Frobenius bounds).
//! * [`spectrum`]: the spectrum monoid and a rule engine for guaranteed members.
//! * [`gadget`]: chord-color propagation over a rainbow ambient cycle and the
//!   scripted chord-color derivations.
//! * [`search`]: construction, backtracking search and certification of
//!   forced-rainbow witness cycles.

pub mod gadget;
pub mod search;
pub mod semigroup;
pub mod spectrum;
