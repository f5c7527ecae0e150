use rand::seq::SliceRandom;
use rand::Rng;

use super::FrequencyVector;
use crate::instance::Instance;
use crate::solution::Solution;

/// Items removed from a solution of `len` items: `floor(eta * len)`, at least one.
pub fn removal_count(eta: f64, len: usize) -> usize {
    if len == 0 {
        return 0;
    }
    // tolerance keeps e.g. 0.29 * 100 from flooring to 28
    ((eta * len as f64 + 1e-9).floor() as usize).clamp(1, len)
}

/// Frequency-guided perturbation of `best`.
///
/// Removes the [`removal_count`] least frequently moved selected items (ties
/// in random order), then visits the unselected items in random order and
/// adds each one that still fits. Since the union weight only grows, one pass
/// leaves no unselected item that fits.
pub fn escape<R: Rng + ?Sized>(
    best: &Solution,
    inst: &Instance,
    eta: f64,
    freq: &FrequencyVector,
    rng: &mut R,
) -> Solution {
    let mut sol = best.clone();
    let mut selected = sol.items();
    selected.shuffle(rng);
    selected.sort_by_key(|&i| freq.counts()[i]);
    for &i in selected.iter().take(removal_count(eta, selected.len())) {
        sol.erase(inst, i);
    }

    let mut pool: Vec<usize> = sol.unselected_items().collect();
    pool.shuffle(rng);
    for i in pool {
        if sol.weight() + sol.add_delta(inst, i) <= inst.capacity() {
            sol.insert(inst, i);
        }
    }
    sol
}
