use rand::Rng;

use super::{Deadline, FrequencyVector, SearchParams};
use crate::instance::Instance;
use crate::neighborhood::{apply_unchecked, best_n3_move, Move};
use crate::solution::Solution;

/// Per-item prohibition windows, counted in tabu search iterations.
///
/// Item `i` is tabu while `iteration < expiry[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TabuState {
    expiry: Vec<u64>,
    iteration: u64,
}

impl TabuState {
    pub fn new(m: usize) -> Self {
        Self {
            expiry: vec![0; m],
            iteration: 0,
        }
    }

    pub fn iteration(&self) -> u64 {
        self.iteration
    }

    #[inline]
    pub fn is_tabu(&self, item: usize) -> bool {
        self.iteration < self.expiry[item]
    }

    /// Forbids `item` for the `tenure` iterations following the current one.
    pub fn forbid(&mut self, item: usize, tenure: usize) {
        self.expiry[item] = self.iteration + 1 + tenure as u64;
    }

    pub fn advance(&mut self) {
        self.iteration += 1;
    }
}

/// Tenure of an item just moved, evaluated on the post-move solution:
/// `floor(0.4 |A|)` for selected items and `floor(0.2 |Ā| 100 / m)` for
/// unselected ones, never less than one iteration.
pub fn tabu_tenure(item: usize, sol: &Solution, m: usize) -> usize {
    let t = if sol.contains(item) {
        2 * sol.len() / 5
    } else {
        20 * sol.unselected_len() / m
    };
    t.max(1)
}

#[derive(Debug, Clone)]
pub struct TabuOutcome {
    /// Best solution seen during the search.
    pub best: Solution,
    /// Solution the search ended on.
    pub last: Solution,
    pub iterations: u64,
}

/// One applied tabu move, as recorded by [`tabu_search_logged`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TabuStep {
    pub iteration: u64,
    pub mv: Move,
    pub aspiration: bool,
    /// Best profit of this tabu search before the move was applied.
    pub best_before: u64,
    /// Profit after the move.
    pub profit_after: u64,
    /// `|A|` after the move.
    pub selected_after: usize,
}

/// Tabu search over N3 until `omega_max` consecutive iterations fail to
/// improve its best solution.
pub fn tabu_search<R: Rng + ?Sized>(
    start: Solution,
    inst: &Instance,
    params: &SearchParams,
    freq: &mut FrequencyVector,
    rng: &mut R,
    deadline: Deadline,
) -> TabuOutcome {
    search(start, inst, params, freq, rng, deadline, None)
}

/// Like [`tabu_search`], appending every applied move to `log`.
pub fn tabu_search_logged<R: Rng + ?Sized>(
    start: Solution,
    inst: &Instance,
    params: &SearchParams,
    freq: &mut FrequencyVector,
    rng: &mut R,
    deadline: Deadline,
    log: &mut Vec<TabuStep>,
) -> TabuOutcome {
    search(start, inst, params, freq, rng, deadline, Some(log))
}

fn search<R: Rng + ?Sized>(
    start: Solution,
    inst: &Instance,
    params: &SearchParams,
    freq: &mut FrequencyVector,
    rng: &mut R,
    deadline: Deadline,
    mut log: Option<&mut Vec<TabuStep>>,
) -> TabuOutcome {
    let m = inst.num_items();
    let mut tabu = TabuState::new(m);
    let mut best = start.clone();
    let mut current = start;
    let mut stale = 0;

    while stale < params.omega_max && !deadline.reached() {
        // strict mode can run out of admissible moves; that ends the search
        let Some(choice) =
            best_n3_move(&current, inst, &tabu, best.profit(), params.aspiration, rng)
        else {
            break;
        };
        apply_unchecked(&mut current, inst, &choice.mv);
        debug_assert!(current.is_feasible(inst));
        freq.record(&choice.mv);
        for i in choice.mv.items() {
            tabu.forbid(i, tabu_tenure(i, &current, m));
        }
        if let Some(log) = log.as_deref_mut() {
            log.push(TabuStep {
                iteration: tabu.iteration(),
                mv: choice.mv.clone(),
                aspiration: choice.aspiration,
                best_before: best.profit(),
                profit_after: current.profit(),
                selected_after: current.len(),
            });
        }
        if current.profit() > best.profit() {
            assert!(current.is_feasible(inst));
            best = current.clone();
            stale = 0;
        } else {
            stale += 1;
        }
        tabu.advance();
    }

    TabuOutcome {
        best,
        last: current,
        iterations: tabu.iteration(),
    }
}
