//! Instantiation over a bounded Herbrand universe.

mod instantiate;
mod program;
mod term;

pub use instantiate::{bounded_universe, ground_program, ground_program_with, GroundingMode};
pub(crate) use instantiate::match_term;
pub use program::*;
pub use term::{eval_arithmetic, term_compare, GroundTerm, Substitution, UniverseBounds};
