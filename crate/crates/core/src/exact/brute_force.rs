use thiserror::Error;

use crate::instance::Instance;
use crate::solution::Solution;

/// Largest `m` accepted by default (2^25 subsets).
pub const DEFAULT_MAX_ITEMS: usize = 25;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("brute force limited to {max} items, instance has {m}")]
    TooManyItems { m: usize, max: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactResult {
    pub optimal_profit: u64,
    /// A feasible subset reaching `optimal_profit`, ascending. May be empty.
    pub optimal_set: Vec<usize>,
    pub subsets_enumerated: u64,
}

/// Enumerates all `2^m` subsets in Gray-code order, so each step adds or
/// removes a single item from a coverage-counted solution.
pub fn brute_force(inst: &Instance, max_m: usize) -> Result<ExactResult, ExactError> {
    let m = inst.num_items();
    let max = max_m.min(63);
    if m > max {
        return Err(ExactError::TooManyItems { m, max });
    }
    let total: u64 = 1 << m;
    let mut sol = Solution::empty(inst);
    let mut mask: u64 = 0;
    let (mut best_profit, mut best_mask) = (0u64, 0u64);
    for k in 1..total {
        let item = k.trailing_zeros() as usize;
        mask ^= 1 << item;
        if sol.contains(item) {
            sol.erase(inst, item);
        } else {
            sol.insert(inst, item);
        }
        if sol.profit() > best_profit && sol.weight() <= inst.capacity() {
            best_profit = sol.profit();
            best_mask = mask;
        }
    }
    Ok(ExactResult {
        optimal_profit: best_profit,
        optimal_set: (0..m).filter(|&i| best_mask >> i & 1 == 1).collect(),
        subsets_enumerated: total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::generate_instance;

    /// Independent oracle: recompute every subset from scratch.
    fn naive_optimum(inst: &Instance) -> u64 {
        let m = inst.num_items();
        let mut best = 0;
        for mask in 0u64..1 << m {
            let mut covered = vec![false; inst.num_elements()];
            let mut profit = 0;
            for i in (0..m).filter(|&i| mask >> i & 1 == 1) {
                profit += inst.profit(i);
                for &j in inst.elements(i) {
                    covered[j] = true;
                }
            }
            let weight: u64 = (0..inst.num_elements())
                .filter(|&j| covered[j])
                .map(|j| inst.weights()[j])
                .sum();
            if weight <= inst.capacity() {
                best = best.max(profit);
            }
        }
        best
    }

    #[test]
    fn single_fitting_item() {
        let inst = Instance::new(vec![7], vec![3], vec![vec![0]], 5).unwrap();
        let r = brute_force(&inst, 25).unwrap();
        assert_eq!(
            (
                r.optimal_profit,
                r.optimal_set.clone(),
                r.subsets_enumerated
            ),
            (7, vec![0], 2)
        );
    }

    #[test]
    fn two_items_one_at_a_time() {
        let inst = Instance::new(vec![7, 9], vec![3, 4], vec![vec![0], vec![1]], 5).unwrap();
        let r = brute_force(&inst, 25).unwrap();
        assert_eq!(r.optimal_profit, 9);
        assert_eq!(r.optimal_set, vec![1]);
    }

    #[test]
    fn nothing_fits_returns_empty_set() {
        let inst = Instance::new(vec![7], vec![3], vec![vec![0]], 2).unwrap();
        let r = brute_force(&inst, 25).unwrap();
        assert_eq!(r.optimal_profit, 0);
        assert!(r.optimal_set.is_empty());
    }

    #[test]
    fn limit_enforced() {
        let inst = generate_instance(30, 10, 0.2, 0.5, 0).unwrap();
        assert_eq!(
            brute_force(&inst, 25),
            Err(ExactError::TooManyItems { m: 30, max: 25 })
        );
    }

    #[test]
    fn matches_naive_recount() {
        for seed in 0..25 {
            let m = 5 + (seed as usize % 11);
            let inst = generate_instance(m, 12, 0.15, 0.75, seed).unwrap();
            let r = brute_force(&inst, 25).unwrap();
            assert_eq!(r.optimal_profit, naive_optimum(&inst), "seed {seed}");
            let witness = Solution::from_items(&inst, r.optimal_set.iter().copied()).unwrap();
            assert_eq!(witness.profit(), r.optimal_profit);
            assert!(witness.recompute_weight(&inst) <= inst.capacity());
        }
    }

    #[test]
    fn generated_15_12_matches_oracle() {
        let inst = generate_instance(15, 12, 0.10, 0.75, 42).unwrap();
        assert_eq!(
            brute_force(&inst, 25).unwrap().optimal_profit,
            naive_optimum(&inst)
        );
    }
}
