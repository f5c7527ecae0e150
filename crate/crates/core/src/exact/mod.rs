//! Exact reference results for small instances and an LP model export.

mod brute_force;
mod lp;

pub use brute_force::{brute_force, ExactError, ExactResult, DEFAULT_MAX_ITEMS};
pub use lp::{export_lp, write_lp};
