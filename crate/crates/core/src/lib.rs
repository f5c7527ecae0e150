//! Set-union knapsack solving.
//!
//! Items carry profits and own subsets of weighted elements; the weight of a
//! selection is the weight of the union of its elements. The crate provides
//! instance I/O and generation ([`instance`]), coverage-counted solutions
//! ([`solution`]), swap neighborhoods ([`neighborhood`]), the iterated
//! two-phase local search ([`i2pls`]), exact references ([`exact`]) and a
//! benchmark harness ([`harness`]).

pub mod exact;
pub mod harness;
pub mod i2pls;
pub mod instance;
pub mod neighborhood;
pub mod solution;

pub use exact::{brute_force, export_lp, ExactResult};
pub use harness::{bench, format_table, BenchStats, TableFormat};
pub use i2pls::{run, RunResult, SearchParams};
pub use instance::{generate_instance, parse_instance, Instance, InstanceError};
pub use neighborhood::Move;
pub use solution::Solution;
