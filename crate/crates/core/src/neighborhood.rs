//! Swap moves and the three neighborhoods explored by the search.
//!
//! A move `swap(q, p)` drops `q` selected items and adds `p` unselected ones.
//!
//! * N1: `(0,1)` add and `(1,1)` exchange, filtered to moves whose resulting
//!   profit beats a reference value.
//! * N2: `(2,1)`, `(1,2)` and `(2,2)`, filtered the same way and sampled with
//!   an independent inclusion probability per candidate.
//! * N3: `(0,1)` add, `(1,0)` drop and `(1,1)` exchange, scanned for the best
//!   admissible move under a tabu list.
//!
//! Every emitted move is capacity-feasible. Candidate weights are evaluated by
//! tentatively updating the coverage counts of one scratch copy of the
//! solution, never by cloning per candidate.

use arrayvec::ArrayVec;
use rand::Rng;
use rand_distr::{Distribution, Geometric};
use thiserror::Error;

use crate::i2pls::TabuState;
use crate::instance::Instance;
use crate::solution::Solution;

pub type ItemList = ArrayVec<usize, 2>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("move drops item {0}, which is not selected")]
    DropNotSelected(usize),
    #[error("move adds item {0}, which is already selected")]
    AddAlreadySelected(usize),
    #[error("item {0} appears twice in the move")]
    Duplicate(usize),
    #[error("item index {index} out of range (m = {m})")]
    OutOfRange { index: usize, m: usize },
    #[error("a move must drop or add at least one item")]
    EmptyMove,
}

/// A swap: drop `drop` from the selection, then add `add`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Move {
    drop: ItemList,
    add: ItemList,
    profit_delta: i64,
}

impl Move {
    /// Builds a move, computing its profit delta. At most two items per side.
    pub fn new(inst: &Instance, drop: &[usize], add: &[usize]) -> Self {
        let drop: ItemList = drop.iter().copied().collect();
        let add: ItemList = add.iter().copied().collect();
        let gain: i64 = add.iter().map(|&i| inst.profit(i) as i64).sum();
        let loss: i64 = drop.iter().map(|&i| inst.profit(i) as i64).sum();
        Self {
            drop,
            add,
            profit_delta: gain - loss,
        }
    }

    pub fn drop(&self) -> &[usize] {
        &self.drop
    }

    pub fn add(&self) -> &[usize] {
        &self.add
    }

    pub fn profit_delta(&self) -> i64 {
        self.profit_delta
    }

    /// `(q, p)`: number of dropped and added items.
    pub fn shape(&self) -> (usize, usize) {
        (self.drop.len(), self.add.len())
    }

    /// Every item touched by the move, drops first.
    pub fn items(&self) -> impl Iterator<Item = usize> + '_ {
        self.drop.iter().chain(self.add.iter()).copied()
    }

    pub fn inverse(&self) -> Self {
        Self {
            drop: self.add.clone(),
            add: self.drop.clone(),
            profit_delta: -self.profit_delta,
        }
    }

    /// Checks the move against `sol` without changing anything.
    pub fn validate(&self, sol: &Solution, m: usize) -> Result<(), MoveError> {
        if self.drop.is_empty() && self.add.is_empty() {
            return Err(MoveError::EmptyMove);
        }
        let mut seen = ArrayVec::<usize, 4>::new();
        for i in self.items() {
            if i >= m {
                return Err(MoveError::OutOfRange { index: i, m });
            }
            if seen.contains(&i) {
                return Err(MoveError::Duplicate(i));
            }
            seen.push(i);
        }
        if let Some(&i) = self.drop.iter().find(|&&i| !sol.contains(i)) {
            return Err(MoveError::DropNotSelected(i));
        }
        if let Some(&i) = self.add.iter().find(|&&i| sol.contains(i)) {
            return Err(MoveError::AddAlreadySelected(i));
        }
        Ok(())
    }
}

/// Applies `mv` to `sol`: drops first, then adds.
///
/// Capacity is not checked here; moves produced by the enumerators in this
/// module are feasible by construction.
pub fn apply_move(sol: &mut Solution, inst: &Instance, mv: &Move) -> Result<(), MoveError> {
    mv.validate(sol, inst.num_items())?;
    apply_unchecked(sol, inst, mv);
    Ok(())
}

#[inline]
pub(crate) fn apply_unchecked(sol: &mut Solution, inst: &Instance, mv: &Move) {
    for &i in mv.drop() {
        sol.erase(inst, i);
    }
    for &i in mv.add() {
        sol.insert(inst, i);
    }
}

/// Visits every move of the filtered N1 neighborhood, adds before exchanges.
pub fn for_each_n1(sol: &Solution, inst: &Instance, best_f: u64, mut visit: impl FnMut(Move)) {
    let cap = inst.capacity();
    let unselected: Vec<usize> = sol.unselected_items().collect();
    if unselected.is_empty() {
        return;
    }
    let selected: Vec<usize> = sol.selected_items().collect();
    let profit = sol.profit();

    for &a in &unselected {
        if profit + inst.profit(a) > best_f && sol.weight() + sol.add_delta(inst, a) <= cap {
            visit(Move::new(inst, &[], &[a]));
        }
    }

    let top = max_profit(inst, &unselected);
    let mut work = sol.clone();
    for &d in &selected {
        let base = profit - inst.profit(d);
        if base + top <= best_f {
            continue;
        }
        work.erase(inst, d);
        for &a in &unselected {
            if base + inst.profit(a) > best_f && work.weight() + work.add_delta(inst, a) <= cap {
                visit(Move::new(inst, &[d], &[a]));
            }
        }
        work.insert(inst, d);
    }
}

/// All moves of the filtered N1 neighborhood: feasible add and exchange
/// moves whose resulting profit is strictly greater than `best_f`.
pub fn enumerate_n1(sol: &Solution, inst: &Instance, best_f: u64) -> Vec<Move> {
    let mut out = Vec::new();
    for_each_n1(sol, inst, best_f, |mv| out.push(mv));
    out
}

/// Bernoulli(rho) inclusion decisions for a stream of candidates.
///
/// Gaps between included candidates are drawn from a geometric distribution,
/// which yields the same law as one independent draw per candidate while
/// allowing whole blocks of candidates to be passed over in O(1).
pub(crate) struct CandidateSampler {
    gap: u64,
    geometric: Option<Geometric>,
}

impl CandidateSampler {
    const NEVER: u64 = u64::MAX;

    pub(crate) fn new<R: Rng + ?Sized>(rho: f64, rng: &mut R) -> Self {
        let geometric = (rho > 0.0).then(|| Geometric::new(rho.min(1.0)).expect("0 < rho <= 1"));
        let mut sampler = Self { gap: 0, geometric };
        sampler.gap = sampler.draw(rng);
        sampler
    }

    fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        match &self.geometric {
            Some(g) => g.sample(rng),
            None => Self::NEVER,
        }
    }

    /// Decision for the next single candidate.
    #[inline]
    pub(crate) fn include_next<R: Rng + ?Sized>(&mut self, rng: &mut R) -> bool {
        if self.gap == 0 {
            self.gap = self.draw(rng);
            true
        } else {
            if self.gap != Self::NEVER {
                self.gap -= 1;
            }
            false
        }
    }

    /// Passes over `block` candidates if none of them would be included.
    #[inline]
    pub(crate) fn try_skip(&mut self, block: u64) -> bool {
        if self.gap >= block {
            if self.gap != Self::NEVER {
                self.gap -= block;
            }
            true
        } else {
            false
        }
    }

    /// Consumes `block` candidates without evaluating them.
    pub(crate) fn discard<R: Rng + ?Sized>(&mut self, mut block: u64, rng: &mut R) {
        while block > 0 {
            if self.try_skip(block) {
                return;
            }
            block -= self.gap + 1;
            self.gap = self.draw(rng);
        }
    }
}

fn max_profit(inst: &Instance, items: &[usize]) -> u64 {
    items.iter().map(|&i| inst.profit(i)).max().unwrap_or(0)
}

fn top_two_profit(inst: &Instance, items: &[usize]) -> u64 {
    let (mut a, mut b) = (0, 0);
    for &i in items {
        let p = inst.profit(i);
        if p > a {
            b = a;
            a = p;
        } else if p > b {
            b = p;
        }
    }
    a + b
}

fn choose2(k: usize) -> u64 {
    let k = k as u64;
    k * k.saturating_sub(1) / 2
}

struct N2Scan<'a, R: Rng + ?Sized, F: FnMut(Move)> {
    inst: &'a Instance,
    unselected: &'a [usize],
    best_f: u64,
    top1: u64,
    top2: u64,
    sampler: CandidateSampler,
    rng: &'a mut R,
    visit: F,
}

impl<R: Rng + ?Sized, F: FnMut(Move)> N2Scan<'_, R, F> {
    /// Single adds on top of `work` (which already has `drop` removed).
    fn singles(&mut self, work: &Solution, drop: &[usize]) {
        let nb = self.unselected.len() as u64;
        let base = work.profit();
        if base + self.top1 <= self.best_f {
            self.sampler.discard(nb, self.rng);
            return;
        }
        let cap = self.inst.capacity();
        for &a in self.unselected {
            if self.sampler.include_next(self.rng)
                && base + self.inst.profit(a) > self.best_f
                && work.weight() + work.add_delta(self.inst, a) <= cap
            {
                (self.visit)(Move::new(self.inst, drop, &[a]));
            }
        }
    }

    /// Pairs of adds on top of `work` (which already has `drop` removed).
    fn pairs(&mut self, work: &mut Solution, drop: &[usize]) {
        let base = work.profit();
        if base + self.top2 <= self.best_f {
            self.sampler
                .discard(choose2(self.unselected.len()), self.rng);
            return;
        }
        let cap = self.inst.capacity();
        let nb = self.unselected.len();
        for u in 0..nb {
            let inner = (nb - 1 - u) as u64;
            if inner == 0 || self.sampler.try_skip(inner) {
                continue;
            }
            let a1 = self.unselected[u];
            let with_a1 = base + self.inst.profit(a1);
            if with_a1 + self.top1 <= self.best_f
                || work.weight() + work.add_delta(self.inst, a1) > cap
            {
                self.sampler.discard(inner, self.rng);
                continue;
            }
            work.insert(self.inst, a1);
            for &a2 in &self.unselected[u + 1..] {
                if self.sampler.include_next(self.rng)
                    && with_a1 + self.inst.profit(a2) > self.best_f
                    && work.weight() + work.add_delta(self.inst, a2) <= cap
                {
                    (self.visit)(Move::new(self.inst, drop, &[a1, a2]));
                }
            }
            work.erase(self.inst, a1);
        }
    }
}

/// Visits the sampled, filtered N2 neighborhood.
///
/// Candidates are scanned in a fixed order: all `(2,1)`, then `(1,2)`, then
/// `(2,2)`, each in lexicographic order of the sorted drop and add lists.
/// Each candidate is kept with probability `rho` before it is evaluated; kept
/// candidates are emitted when feasible and more profitable than `best_f`.
pub fn for_each_n2_sampled<R: Rng + ?Sized>(
    sol: &Solution,
    inst: &Instance,
    best_f: u64,
    rho: f64,
    rng: &mut R,
    visit: impl FnMut(Move),
) {
    let selected: Vec<usize> = sol.selected_items().collect();
    let unselected: Vec<usize> = sol.unselected_items().collect();
    let (na, nb) = (selected.len(), unselected.len());
    if na == 0 || nb == 0 || rho <= 0.0 {
        return;
    }
    let sampler = CandidateSampler::new(rho, rng);
    let mut scan = N2Scan {
        inst,
        unselected: &unselected,
        best_f,
        top1: max_profit(inst, &unselected),
        top2: top_two_profit(inst, &unselected),
        sampler,
        rng,
        visit,
    };
    let mut work = sol.clone();
    let pair_adds = choose2(nb);

    // (2,1)
    for x in 0..na {
        let block = (na - 1 - x) as u64 * nb as u64;
        if block == 0 || scan.sampler.try_skip(block) {
            continue;
        }
        let d1 = selected[x];
        work.erase(inst, d1);
        for &d2 in &selected[x + 1..] {
            if scan.sampler.try_skip(nb as u64) {
                continue;
            }
            work.erase(inst, d2);
            scan.singles(&work, &[d1, d2]);
            work.insert(inst, d2);
        }
        work.insert(inst, d1);
    }

    // (1,2)
    for &d in &selected {
        if pair_adds == 0 || scan.sampler.try_skip(pair_adds) {
            continue;
        }
        work.erase(inst, d);
        scan.pairs(&mut work, &[d]);
        work.insert(inst, d);
    }

    // (2,2)
    for x in 0..na {
        let block = (na - 1 - x) as u64 * pair_adds;
        if block == 0 || scan.sampler.try_skip(block) {
            continue;
        }
        let d1 = selected[x];
        work.erase(inst, d1);
        for &d2 in &selected[x + 1..] {
            if scan.sampler.try_skip(pair_adds) {
                continue;
            }
            work.erase(inst, d2);
            scan.pairs(&mut work, &[d1, d2]);
            work.insert(inst, d2);
        }
        work.insert(inst, d1);
    }
}

/// Sampled, filtered N2 neighborhood collected into a list.
pub fn enumerate_n2_sampled<R: Rng + ?Sized>(
    sol: &Solution,
    inst: &Instance,
    best_f: u64,
    rho: f64,
    rng: &mut R,
) -> Vec<Move> {
    let mut out = Vec::new();
    for_each_n2_sampled(sol, inst, best_f, rho, rng, |mv| out.push(mv));
    out
}

/// The move picked by [`best_n3_move`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct N3Choice {
    pub mv: Move,
    /// True when the move touches a tabu item and was admitted because its
    /// resulting profit beats the reference best.
    pub aspiration: bool,
}

/// Best admissible N3 move, ties broken uniformly at random.
///
/// A move is admissible when none of its items is tabu, or, with
/// `aspiration` enabled, when it would lead to a profit above `best_f`.
/// Worsening moves are returned when nothing better is admissible.
pub fn best_n3_move<R: Rng + ?Sized>(
    sol: &Solution,
    inst: &Instance,
    tabu: &TabuState,
    best_f: u64,
    aspiration: bool,
    rng: &mut R,
) -> Option<N3Choice> {
    let cap = inst.capacity();
    let profit = sol.profit() as i64;
    let selected: Vec<usize> = sol.selected_items().collect();
    let unselected: Vec<usize> = sol.unselected_items().collect();

    let mut best = BestN3::default();
    let admit = |tabu_hit: bool, delta: i64| -> Option<bool> {
        if !tabu_hit {
            Some(false)
        } else if aspiration && profit + delta > best_f as i64 {
            Some(true)
        } else {
            None
        }
    };

    for &a in &unselected {
        let delta = inst.profit(a) as i64;
        if !best.competitive(delta) {
            continue;
        }
        if let Some(asp) = admit(tabu.is_tabu(a), delta) {
            if sol.weight() + sol.add_delta(inst, a) <= cap {
                best.offer(N3Kind::Add(a), delta, asp, rng);
            }
        }
    }
    for &d in &selected {
        let delta = -(inst.profit(d) as i64);
        if !best.competitive(delta) {
            continue;
        }
        if let Some(asp) = admit(tabu.is_tabu(d), delta) {
            best.offer(N3Kind::Drop(d), delta, asp, rng);
        }
    }
    let mut work = sol.clone();
    for &d in &selected {
        let d_tabu = tabu.is_tabu(d);
        if d_tabu && !aspiration {
            continue;
        }
        work.erase(inst, d);
        for &a in &unselected {
            let delta = inst.profit(a) as i64 - inst.profit(d) as i64;
            if !best.competitive(delta) {
                continue;
            }
            if let Some(asp) = admit(d_tabu || tabu.is_tabu(a), delta) {
                if work.weight() + work.add_delta(inst, a) <= cap {
                    best.offer(N3Kind::Exchange(d, a), delta, asp, rng);
                }
            }
        }
        work.insert(inst, d);
    }

    best.chosen.map(|(kind, _, aspiration)| {
        let mv = match kind {
            N3Kind::Add(a) => Move::new(inst, &[], &[a]),
            N3Kind::Drop(d) => Move::new(inst, &[d], &[]),
            N3Kind::Exchange(d, a) => Move::new(inst, &[d], &[a]),
        };
        N3Choice { mv, aspiration }
    })
}

#[derive(Clone, Copy)]
enum N3Kind {
    Add(usize),
    Drop(usize),
    Exchange(usize, usize),
}

/// Running argmax with reservoir tie-breaking.
#[derive(Default)]
struct BestN3 {
    chosen: Option<(N3Kind, i64, bool)>,
    ties: u32,
}

impl BestN3 {
    #[inline]
    fn competitive(&self, delta: i64) -> bool {
        self.chosen.map_or(true, |(_, d, _)| delta >= d)
    }

    fn offer<R: Rng + ?Sized>(&mut self, kind: N3Kind, delta: i64, aspiration: bool, rng: &mut R) {
        match self.chosen {
            Some((_, d, _)) if delta < d => {}
            Some((_, d, _)) if delta == d => {
                self.ties += 1;
                if rng.random_range(0..self.ties) == 0 {
                    self.chosen = Some((kind, delta, aspiration));
                }
            }
            _ => {
                self.ties = 1;
                self.chosen = Some((kind, delta, aspiration));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::generate_instance;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeSet;

    fn small_state(seed: u64) -> (Instance, Solution) {
        let inst = generate_instance(11, 10, 0.2, 0.6, seed).unwrap();
        let mut sol = Solution::empty(&inst);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for i in 0..inst.num_items() {
            if rng.random_bool(0.5) && sol.weight() + sol.add_delta(&inst, i) <= inst.capacity() {
                sol.insert(&inst, i);
            }
        }
        (inst, sol)
    }

    fn result_of(sol: &Solution, inst: &Instance, mv: &Move) -> Vec<usize> {
        let mut s = sol.clone();
        apply_move(&mut s, inst, mv).unwrap();
        s.items()
    }

    #[test]
    fn n1_empty_when_everything_selected() {
        let inst = generate_instance(5, 5, 0.3, 0.9, 1).unwrap();
        let sol = Solution::from_items(&inst, 0..5).unwrap();
        assert!(enumerate_n1(&sol, &inst, 0).is_empty());
    }

    #[test]
    fn infinite_reference_filters_everything() {
        let (inst, sol) = small_state(4);
        assert!(enumerate_n1(&sol, &inst, u64::MAX).is_empty());
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(enumerate_n2_sampled(&sol, &inst, u64::MAX, 1.0, &mut rng).is_empty());
    }

    #[test]
    fn zero_rho_samples_nothing() {
        let (inst, sol) = small_state(5);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(enumerate_n2_sampled(&sol, &inst, 0, 0.0, &mut rng).is_empty());
    }

    #[test]
    fn sampled_n2_reproducible_for_seed() {
        let inst = generate_instance(40, 40, 0.1, 0.75, 9).unwrap();
        let sol = crate::i2pls::greedy_initial_solution(&inst, Default::default());
        let pick = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            enumerate_n2_sampled(&sol, &inst, 0, 0.05, &mut rng)
        };
        assert_eq!(pick(3), pick(3));
        assert!(!pick(3).is_empty());
    }

    /// Same candidate order as the scanner, one sampler decision per
    /// candidate, no pruning: checks that block skipping preserves decisions.
    fn naive_sampled_n2(
        sol: &Solution,
        inst: &Instance,
        best_f: u64,
        rho: f64,
        seed: u64,
    ) -> Vec<Move> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a: Vec<usize> = sol.selected_items().collect();
        let b: Vec<usize> = sol.unselected_items().collect();
        let mut out = Vec::new();
        if a.is_empty() || b.is_empty() {
            return out;
        }
        let mut sampler = CandidateSampler::new(rho, &mut rng);
        let mut consider = |drop: &[usize],
                            add: &[usize],
                            sampler: &mut CandidateSampler,
                            rng: &mut ChaCha8Rng| {
            if sampler.include_next(rng) {
                let mv = Move::new(inst, drop, add);
                let mut s = sol.clone();
                apply_unchecked(&mut s, inst, &mv);
                if s.profit() > best_f && s.recompute_weight(inst) <= inst.capacity() {
                    out.push(mv);
                }
            }
        };
        for x in 0..a.len() {
            for y in x + 1..a.len() {
                for &c in &b {
                    consider(&[a[x], a[y]], &[c], &mut sampler, &mut rng);
                }
            }
        }
        for &d in &a {
            for u in 0..b.len() {
                for v in u + 1..b.len() {
                    consider(&[d], &[b[u], b[v]], &mut sampler, &mut rng);
                }
            }
        }
        for x in 0..a.len() {
            for y in x + 1..a.len() {
                for u in 0..b.len() {
                    for v in u + 1..b.len() {
                        consider(&[a[x], a[y]], &[b[u], b[v]], &mut sampler, &mut rng);
                    }
                }
            }
        }
        out
    }

    #[test]
    fn block_skipping_keeps_per_candidate_decisions() {
        for seed in 0..30 {
            let (inst, sol) = small_state(seed);
            for rho in [0.05, 0.3, 1.0] {
                for best_f in [0, sol.profit(), sol.profit() + 50] {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed + 100);
                    let fast = enumerate_n2_sampled(&sol, &inst, best_f, rho, &mut rng);
                    let slow = naive_sampled_n2(&sol, &inst, best_f, rho, seed + 100);
                    assert_eq!(fast, slow, "seed {seed} rho {rho} best_f {best_f}");
                }
            }
        }
    }

    #[test]
    fn sampler_discard_matches_single_steps() {
        for rho in [0.01, 0.2, 0.9] {
            let mut r1 = ChaCha8Rng::seed_from_u64(1);
            let mut r2 = ChaCha8Rng::seed_from_u64(1);
            let mut s1 = CandidateSampler::new(rho, &mut r1);
            let mut s2 = CandidateSampler::new(rho, &mut r2);
            for block in [0u64, 5, 17, 1, 200, 3] {
                for _ in 0..block {
                    s1.include_next(&mut r1);
                }
                s2.discard(block, &mut r2);
                let a: Vec<bool> = (0..50).map(|_| s1.include_next(&mut r1)).collect();
                let b: Vec<bool> = (0..50).map(|_| s2.include_next(&mut r2)).collect();
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn sampler_inclusion_rate() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut s = CandidateSampler::new(0.05, &mut rng);
        let hits = (0..200_000).filter(|_| s.include_next(&mut rng)).count();
        let rate = hits as f64 / 200_000.0;
        assert!((rate - 0.05).abs() < 0.003, "rate {rate}");
    }

    #[test]
    fn emitted_moves_are_feasible_and_shaped() {
        for seed in 0..20 {
            let (inst, sol) = small_state(seed);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for mv in enumerate_n1(&sol, &inst, 0) {
                assert!(matches!(mv.shape(), (0, 1) | (1, 1)));
                let mut s = sol.clone();
                apply_move(&mut s, &inst, &mv).unwrap();
                assert!(s.weight() <= inst.capacity());
                assert_eq!(s.weight(), s.recompute_weight(&inst));
                assert_eq!(s.profit() as i64, sol.profit() as i64 + mv.profit_delta());
            }
            for mv in enumerate_n2_sampled(&sol, &inst, 0, 1.0, &mut rng) {
                assert!(matches!(mv.shape(), (2, 1) | (1, 2) | (2, 2)));
                let mut s = sol.clone();
                apply_move(&mut s, &inst, &mv).unwrap();
                assert!(s.weight() <= inst.capacity());
            }
        }
    }

    #[test]
    fn apply_inverse_restores() {
        let (inst, sol) = small_state(7);
        for mv in enumerate_n1(&sol, &inst, 0) {
            let mut s = sol.clone();
            apply_move(&mut s, &inst, &mv).unwrap();
            apply_move(&mut s, &inst, &mv.inverse()).unwrap();
            assert_eq!(s, sol);
        }
    }

    #[test]
    fn add_move_increases_profit_by_item_profit() {
        let (inst, sol) = small_state(8);
        let a = sol.unselected_items().next().unwrap();
        let mv = Move::new(&inst, &[], &[a]);
        let mut s = sol.clone();
        apply_move(&mut s, &inst, &mv).unwrap();
        assert_eq!(s.profit(), sol.profit() + inst.profit(a));
    }

    #[test]
    fn apply_rejects_invalid_moves() {
        let (inst, sol) = small_state(9);
        let a = sol.unselected_items().next().unwrap();
        let d = sol.selected_items().next().unwrap();
        let mut s = sol.clone();
        assert_eq!(
            apply_move(&mut s, &inst, &Move::new(&inst, &[a], &[])),
            Err(MoveError::DropNotSelected(a))
        );
        assert_eq!(
            apply_move(&mut s, &inst, &Move::new(&inst, &[], &[d])),
            Err(MoveError::AddAlreadySelected(d))
        );
        assert_eq!(
            apply_move(&mut s, &inst, &Move::new(&inst, &[d, d], &[])),
            Err(MoveError::Duplicate(d))
        );
        assert_eq!(
            apply_move(&mut s, &inst, &Move::new(&inst, &[], &[])),
            Err(MoveError::EmptyMove)
        );
        assert_eq!(s, sol);
    }

    #[test]
    fn lone_item_with_everything_else_blocked_drops() {
        // item 1 alone overflows capacity, item 0 is selected
        let inst = Instance::new(vec![5, 9], vec![3, 10], vec![vec![0], vec![1]], 4).unwrap();
        let sol = Solution::from_items(&inst, [0]).unwrap();
        let mut tabu = TabuState::new(2);
        tabu.forbid(1, 5);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let choice = best_n3_move(&sol, &inst, &tabu, sol.profit(), true, &mut rng).unwrap();
        assert_eq!(choice.mv.shape(), (1, 0));
        assert!(!choice.aspiration);

        tabu.forbid(0, 5);
        assert_eq!(
            best_n3_move(&sol, &inst, &tabu, sol.profit(), true, &mut rng),
            None
        );
    }

    #[test]
    fn all_tabu_without_aspiration_gives_none() {
        let (inst, sol) = small_state(3);
        let mut tabu = TabuState::new(inst.num_items());
        for i in 0..inst.num_items() {
            tabu.forbid(i, 10);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert_eq!(best_n3_move(&sol, &inst, &tabu, 0, false, &mut rng), None);
        // aspiration with a reachable reference admits the best move
        let c = best_n3_move(&sol, &inst, &tabu, 0, true, &mut rng).unwrap();
        assert!(c.aspiration);
    }

    #[test]
    fn n3_ties_are_randomised() {
        // four identical items, one selected, each addable
        let inst = Instance::new(
            vec![5; 4],
            vec![1; 4],
            vec![vec![0], vec![1], vec![2], vec![3]],
            10,
        )
        .unwrap();
        let sol = Solution::from_items(&inst, [0]).unwrap();
        let tabu = TabuState::new(4);
        let mut seen = BTreeSet::new();
        for seed in 0..64 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let c = best_n3_move(&sol, &inst, &tabu, u64::MAX, true, &mut rng).unwrap();
            assert_eq!(c.mv.shape(), (0, 1));
            seen.insert(c.mv.add()[0]);
        }
        assert_eq!(seen, BTreeSet::from([1, 2, 3]));
    }

    #[test]
    fn n1_matches_pairwise_oracle() {
        for seed in 0..20 {
            let (inst, sol) = small_state(seed);
            for best_f in [0, sol.profit(), sol.profit().saturating_sub(100)] {
                let got: BTreeSet<Vec<usize>> = enumerate_n1(&sol, &inst, best_f)
                    .iter()
                    .map(|mv| result_of(&sol, &inst, mv))
                    .collect();
                let mut want = BTreeSet::new();
                let a: Vec<usize> = sol.selected_items().collect();
                let b: Vec<usize> = sol.unselected_items().collect();
                for &add in &b {
                    for drop in std::iter::once(None).chain(a.iter().map(Some)) {
                        let mut items: Vec<usize> =
                            a.iter().copied().filter(|i| Some(i) != drop).collect();
                        items.push(add);
                        let s = Solution::from_items(&inst, items).unwrap();
                        if s.profit() > best_f && s.recompute_weight(&inst) <= inst.capacity() {
                            want.insert(s.items());
                        }
                    }
                }
                assert_eq!(got, want, "seed {seed}");
            }
        }
    }
}
