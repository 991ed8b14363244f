//! Sequential projective measurements on a driven qubit and the
//! Leggett-Garg functionals built from them.
//!
//! Observables are evaluated in the Heisenberg picture: slot `i` measures
//! `M_i = U†σ_z U` with `U` the product of the evolutions over the first
//! `i − 1` intervals. Outcomes are `±1`, collapse follows the Lüders rule.

pub mod error;
pub mod functional;
pub mod nsit;
pub mod qubit;
pub mod search;
pub mod sequential;

pub use error::{LgError, Result};
pub use functional::{eval_all_measured, eval_separate, macrorealist_bound, FunctionalSpec};
pub use qubit::{Operator, Outcome, PureState, Schedule};
