use rand::Rng;

use super::{Deadline, FrequencyVector, SearchParams};
use crate::instance::Instance;
use crate::neighborhood::{apply_unchecked, for_each_n1, for_each_n2_sampled, Move};
use crate::solution::Solution;

/// Best-improvement descent over N1, falling back to a sampled N2 whenever N1
/// has no improving move, and returning to N1 after every N2 improvement.
///
/// Both neighborhoods are filtered against the descent's best profit, which
/// is always the current solution's profit, so every applied move strictly
/// improves. Equal-best moves are chosen uniformly at random.
pub fn vnd<R: Rng + ?Sized>(
    start: Solution,
    inst: &Instance,
    params: &SearchParams,
    freq: &mut FrequencyVector,
    rng: &mut R,
    deadline: Deadline,
) -> Solution {
    let mut current = start;
    let mut ties: Vec<Move> = Vec::new();
    while !deadline.reached() {
        ties.clear();
        let reference = current.profit();
        for_each_n1(&current, inst, reference, |mv| keep_best(&mut ties, mv));
        if ties.is_empty() {
            for_each_n2_sampled(&current, inst, reference, params.rho, rng, |mv| {
                keep_best(&mut ties, mv)
            });
        }
        let pick = match ties.len() {
            0 => break,
            1 => 0,
            k => rng.random_range(0..k),
        };
        let mv = &ties[pick];
        apply_unchecked(&mut current, inst, mv);
        debug_assert!(current.is_feasible(inst) && current.profit() > reference);
        freq.record(mv);
    }
    current
}

fn keep_best(ties: &mut Vec<Move>, mv: Move) {
    match ties.first().map(Move::profit_delta) {
        Some(best) if mv.profit_delta() < best => {}
        Some(best) if mv.profit_delta() == best => ties.push(mv),
        _ => {
            ties.clear();
            ties.push(mv);
        }
    }
}
