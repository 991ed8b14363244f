//! Leggett-Garg functionals as data: construction, parsing, quantum
//! evaluation, macrorealist bounds and the published closed forms.

mod bounds;
mod closed_form;
mod eval;
mod spec;

pub use bounds::{macrorealist_bound, BoundPair, MAX_BOUND_SLOTS};
pub use closed_form::{
    closed_form, closed_form_discrepancies, closed_form_quarter_period, compare_closed_form,
    variant_k3_limit, ClosedFormComparison, ClosedFormFamily, DISCREPANCY_TOL,
};
pub(crate) use eval::eval_separate_with;
pub use eval::{eval_all_measured, eval_separate, ENUMERATED_TERM_LIMIT};
pub use spec::{FunctionalFamily, FunctionalSpec, Sign, Term};
