//! The iterated two-phase local search.
//!
//! One run alternates an exploration phase, which chains variable
//! neighborhood descent with tabu search until `lambda_max` consecutive rounds
//! fail to improve, and a frequency-guided escape that perturbs the phase's
//! best solution before the next exploration starts.

mod driver;
mod escape;
mod greedy;
mod params;
mod tabu;
mod vnd;

use std::time::{Duration, Instant};

use crate::neighborhood::Move;

pub use driver::{explore, run, run_with_observer, RunResult, TracePoint};
pub use escape::{escape, removal_count};
pub use greedy::{greedy_initial_solution, GreedyScan};
pub use params::{ParamsError, SearchParams};
pub use tabu::{tabu_search, tabu_search_logged, tabu_tenure, TabuOutcome, TabuState, TabuStep};
pub use vnd::vnd;

/// Per-item count of applied moves the item took part in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequencyVector {
    counts: Vec<u64>,
}

impl FrequencyVector {
    pub fn new(m: usize) -> Self {
        Self { counts: vec![0; m] }
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn record(&mut self, mv: &Move) {
        for i in mv.items() {
            self.counts[i] += 1;
        }
    }

    #[cfg(test)]
    pub(crate) fn from_counts(counts: Vec<u64>) -> Self {
        Self { counts }
    }
}

/// Wall-clock cut-off; `Deadline::never()` disables it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Deadline(Option<Instant>);

impl Deadline {
    pub fn never() -> Self {
        Self(None)
    }

    pub fn after(budget: Duration) -> Self {
        Self(Instant::now().checked_add(budget))
    }

    pub fn at(instant: Instant) -> Self {
        Self(Some(instant))
    }

    #[inline]
    pub fn reached(&self) -> bool {
        self.0.is_some_and(|t| Instant::now() >= t)
    }
}
