//! Model checking for star-free dynamic logic of propositional assignments
//! with converse, applied to abstract argumentation.
//!
//! The crate has three layers:
//!
//! * a relational evaluator for the logic itself ([`universe`], [`syntax`],
//!   [`eval`], [`parser`]);
//! * a definition-level argumentation oracle and the logical encodings of
//!   nine extension semantics ([`af`], [`encodings`]);
//! * uncertainty and dynamics: incomplete, constrained, and control
//!   frameworks, with acceptance and controllability queries answered both by
//!   direct enumeration and by model checking, cross-validated against each
//!   other ([`uncertainty`], [`control`], [`query`]).
//!
//! File formats, result documents, and the command-line interface live in
//! [`io`] and [`cli`]. The `examples/` directory of this crate walks through
//! every capability; start with `semantics_extensions` and `completions_catalog`.

pub mod af;
pub mod cli;
pub mod control;
pub mod encodings;
pub mod error;
pub mod eval;
pub mod io;
pub mod parser;
pub mod query;
pub mod sampling;
pub mod syntax;
pub mod uncertainty;
pub mod universe;

pub use error::Error;
pub use universe::{Universe, Valuation, Var};
