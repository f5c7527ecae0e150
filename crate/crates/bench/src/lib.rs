//! Fixtures shared by the criterion benchmarks.

use sukp_core::i2pls::{greedy_initial_solution, GreedyScan};
use sukp_core::{generate_instance, Instance, Solution};

/// Generated instance in the style of the `m_n_0.10_0.75` benchmark family.
pub fn fixture(m: usize, n: usize, seed: u64) -> Instance {
    generate_instance(m, n, 0.10, 0.75, seed).expect("valid generator arguments")
}

/// The greedy starting point the search itself would use.
pub fn greedy(inst: &Instance) -> Solution {
    greedy_initial_solution(inst, GreedyScan::Continue)
}
