//! Formula language and Kripke-Joyal interpreter: first-order formulas with
//! bounded quantifiers evaluate to subobjects in any ambient category, and
//! the constructive set-theory axiom schemas are generated as formulas.

pub mod ast;
pub mod env;
pub mod eval;
pub mod parse;
pub mod schema;

pub use ast::{Formula, Term};
pub use env::{Environment, RelInterp};
pub use eval::{kripke_joyal_eval, Evaluator};
pub use parse::parse;
pub use schema::{instantiate_schema, AxiomSchemaId, SET_SORT};
