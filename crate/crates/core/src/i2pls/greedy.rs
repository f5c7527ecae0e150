use std::cmp::Ordering;

use crate::instance::Instance;
use crate::solution::Solution;

/// How the greedy construction treats an item that does not fit.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum GreedyScan {
    /// Skip it and keep trying the remaining items.
    #[default]
    Continue,
    /// Stop the construction at the first item that does not fit.
    StopAtFirstOverflow,
}

/// Adds items in decreasing order of `p_i / w_i`, where `w_i` is the item's
/// own element weight, keeping the knapsack feasible.
///
/// Ratios are compared exactly by cross-multiplication; equal ratios keep
/// index order.
pub fn greedy_initial_solution(inst: &Instance, scan: GreedyScan) -> Solution {
    let weights = inst.item_weights();
    let mut order: Vec<usize> = (0..inst.num_items()).collect();
    order.sort_by(|&a, &b| {
        let lhs = inst.profit(a) as u128 * weights[b] as u128;
        let rhs = inst.profit(b) as u128 * weights[a] as u128;
        rhs.cmp(&lhs).then(Ordering::Equal)
    });

    let mut sol = Solution::empty(inst);
    for i in order {
        if sol.weight() + sol.add_delta(inst, i) <= inst.capacity() {
            sol.insert(inst, i);
        } else if scan == GreedyScan::StopAtFirstOverflow {
            break;
        }
    }
    sol
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disjoint_items_that_fit_are_all_taken() {
        let inst = Instance::new(vec![3, 4], vec![2, 4], vec![vec![0], vec![1]], 6).unwrap();
        let sol = greedy_initial_solution(&inst, GreedyScan::Continue);
        assert_eq!(sol.items(), vec![0, 1]);
    }

    #[test]
    fn overlapping_items_weigh_once() {
        let inst = Instance::new(vec![1, 2, 3], vec![4, 5], vec![vec![0, 1]; 3], 9).unwrap();
        let sol = greedy_initial_solution(&inst, GreedyScan::Continue);
        assert_eq!(sol.items(), vec![0, 1, 2]);
        assert_eq!(sol.weight(), 9);
    }

    #[test]
    fn scan_modes_differ_after_overflow() {
        // ratios: item0 10/1, item1 9/10 (overflows), item2 1/2
        let inst = Instance::new(
            vec![10, 9, 1],
            vec![1, 10, 2],
            vec![vec![0], vec![1], vec![2]],
            4,
        )
        .unwrap();
        assert_eq!(
            greedy_initial_solution(&inst, GreedyScan::Continue).items(),
            vec![0, 2]
        );
        assert_eq!(
            greedy_initial_solution(&inst, GreedyScan::StopAtFirstOverflow).items(),
            vec![0]
        );
    }

    #[test]
    fn nothing_fits_gives_empty() {
        let inst = Instance::new(vec![1, 1], vec![5, 6], vec![vec![0], vec![1]], 4).unwrap();
        assert!(greedy_initial_solution(&inst, GreedyScan::Continue).is_empty());
    }
}
