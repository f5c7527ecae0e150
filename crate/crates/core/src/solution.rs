//! Candidate solutions with incrementally maintained profit and union weight.

use std::fmt;

use thiserror::Error;

use crate::instance::Instance;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolutionError {
    #[error("item {0} is already selected")]
    AlreadySelected(usize),
    #[error("item {0} is not selected")]
    NotSelected(usize),
    #[error("item index {index} out of range (m = {m})")]
    OutOfRange { index: usize, m: usize },
}

/// A selected item set `A` together with per-element coverage counts.
///
/// `coverage[j]` is the number of selected items that own element `j`; an
/// element contributes its weight exactly when its count is non-zero. Adding
/// or removing an item therefore costs `O(|U_i|)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    selected: Vec<bool>,
    len: usize,
    coverage: Vec<u32>,
    profit: u64,
    weight: u64,
}

impl Solution {
    /// The empty selection.
    pub fn empty(inst: &Instance) -> Self {
        Self {
            selected: vec![false; inst.num_items()],
            len: 0,
            coverage: vec![0; inst.num_elements()],
            profit: 0,
            weight: 0,
        }
    }

    /// Selects every item yielded by `items`; duplicates are rejected.
    pub fn from_items(
        inst: &Instance,
        items: impl IntoIterator<Item = usize>,
    ) -> Result<Self, SolutionError> {
        let mut sol = Self::empty(inst);
        for i in items {
            sol.add_item(inst, i)?;
        }
        Ok(sol)
    }

    #[inline]
    pub fn profit(&self) -> u64 {
        self.profit
    }

    #[inline]
    pub fn weight(&self) -> u64 {
        self.weight
    }

    /// Number of selected items, `|A|`.
    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Number of unselected items, `|Ā|`.
    #[inline]
    pub fn unselected_len(&self) -> usize {
        self.selected.len() - self.len
    }

    #[inline]
    pub fn contains(&self, item: usize) -> bool {
        self.selected[item]
    }

    pub fn coverage(&self) -> &[u32] {
        &self.coverage
    }

    pub fn is_feasible(&self, inst: &Instance) -> bool {
        self.weight <= inst.capacity()
    }

    /// Selected items in ascending order.
    pub fn selected_items(&self) -> impl Iterator<Item = usize> + '_ {
        self.selected
            .iter()
            .enumerate()
            .filter(|(_, &s)| s)
            .map(|(i, _)| i)
    }

    /// Unselected items in ascending order.
    pub fn unselected_items(&self) -> impl Iterator<Item = usize> + '_ {
        self.selected
            .iter()
            .enumerate()
            .filter(|(_, &s)| !s)
            .map(|(i, _)| i)
    }

    pub fn items(&self) -> Vec<usize> {
        self.selected_items().collect()
    }

    fn check_index(&self, item: usize) -> Result<(), SolutionError> {
        if item < self.selected.len() {
            Ok(())
        } else {
            Err(SolutionError::OutOfRange {
                index: item,
                m: self.selected.len(),
            })
        }
    }

    pub fn add_item(&mut self, inst: &Instance, item: usize) -> Result<(), SolutionError> {
        self.check_index(item)?;
        if self.selected[item] {
            return Err(SolutionError::AlreadySelected(item));
        }
        self.insert(inst, item);
        Ok(())
    }

    pub fn remove_item(&mut self, inst: &Instance, item: usize) -> Result<(), SolutionError> {
        self.check_index(item)?;
        if !self.selected[item] {
            return Err(SolutionError::NotSelected(item));
        }
        self.erase(inst, item);
        Ok(())
    }

    /// Unchecked add used on search hot paths.
    #[inline]
    pub(crate) fn insert(&mut self, inst: &Instance, item: usize) {
        debug_assert!(!self.selected[item]);
        self.selected[item] = true;
        self.len += 1;
        self.profit += inst.profit(item);
        let weights = inst.weights();
        for &j in inst.elements(item) {
            let c = &mut self.coverage[j];
            if *c == 0 {
                self.weight += weights[j];
            }
            *c += 1;
        }
    }

    /// Unchecked remove used on search hot paths.
    #[inline]
    pub(crate) fn erase(&mut self, inst: &Instance, item: usize) {
        debug_assert!(self.selected[item]);
        self.selected[item] = false;
        self.len -= 1;
        self.profit -= inst.profit(item);
        let weights = inst.weights();
        for &j in inst.elements(item) {
            let c = &mut self.coverage[j];
            *c -= 1;
            if *c == 0 {
                self.weight -= weights[j];
            }
        }
    }

    /// Weight that adding `item` would contribute: its currently uncovered elements.
    #[inline]
    pub fn add_delta(&self, inst: &Instance, item: usize) -> u64 {
        let weights = inst.weights();
        inst.elements(item)
            .iter()
            .filter(|&&j| self.coverage[j] == 0)
            .map(|&j| weights[j])
            .sum()
    }

    /// Weight that removing `item` would free: elements covered by it alone.
    #[inline]
    pub fn remove_delta(&self, inst: &Instance, item: usize) -> u64 {
        let weights = inst.weights();
        inst.elements(item)
            .iter()
            .filter(|&&j| self.coverage[j] == 1)
            .map(|&j| weights[j])
            .sum()
    }

    /// Union weight recomputed from the selected set, ignoring all caches.
    pub fn recompute_weight(&self, inst: &Instance) -> u64 {
        let mut covered = vec![false; inst.num_elements()];
        for i in self.selected_items() {
            for &j in inst.elements(i) {
                covered[j] = true;
            }
        }
        covered
            .iter()
            .zip(inst.weights())
            .filter(|(&c, _)| c)
            .map(|(_, &w)| w)
            .sum()
    }

    pub fn recompute_profit(&self, inst: &Instance) -> u64 {
        self.selected_items().map(|i| inst.profit(i)).sum()
    }

    /// Checks every cached quantity against a from-scratch recount.
    pub fn is_consistent(&self, inst: &Instance) -> bool {
        let mut coverage = vec![0u32; inst.num_elements()];
        for i in self.selected_items() {
            for &j in inst.elements(i) {
                coverage[j] += 1;
            }
        }
        coverage == self.coverage
            && self.len == self.selected_items().count()
            && self.profit == self.recompute_profit(inst)
            && self.weight == self.recompute_weight(inst)
    }
}

/// One-line log form: `profit=P weight=W items=[i j k]`.
impl fmt::Display for Solution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "profit={} weight={} items=[", self.profit, self.weight)?;
        for (k, i) in self.selected_items().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("]")
    }
}
