//! Desk-scale workbench for algebraic set theory.
//!
//! The crate represents computable Heyting categories equipped with classes
//! of small maps, checks the small-map axiom system on finite fragments, and
//! executes the associated constructions: Kripke-Joyal evaluation of
//! first-order formulas, W-types over polynomial signatures, rank-truncated
//! cumulative hierarchies, sheafification over finite sites, and bounded
//! exact completion.
//!
//! Verdicts about axioms are verdicts about finite fragments: `REFUTED`
//! always carries a replayable counterexample, `WITNESSED` a checked
//! witness, and searches that run out of budget report `INCONCLUSIVE`
//! rather than guessing.

pub mod budget;
pub mod error;
pub mod excomp;
pub mod fincat;
pub mod logic;
pub mod sheaves;
pub mod smallmaps;
pub mod util;
pub mod wzf;

pub use budget::Budget;
pub use error::{Error, Result};
