//! Polynomial functors, depth-truncated W-types, bisimulation quotients and
//! the rank-truncated cumulative hierarchy with its axiom census.

pub mod bisim;
pub mod hf;
pub mod poly;
pub mod setax;
pub mod vmodel;
pub mod wtree;

pub use bisim::bisim_quotient;
pub use hf::Hf;
pub use poly::{polynomial_apply, PolynomialSignature};
pub use setax::{check_set_axiom, SetAxiomVerdict};
pub use vmodel::{build_v, VApprox};
pub use wtree::{wtype, WTree};
