use std::io::{self, Write};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{
    escape, greedy_initial_solution, tabu_search, vnd, Deadline, FrequencyVector, ParamsError,
    SearchParams,
};
use crate::instance::Instance;
use crate::solution::Solution;

/// A global-best improvement: elapsed time since the run started, and profit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TracePoint {
    pub elapsed: Duration,
    pub profit: u64,
}

#[derive(Debug, Clone)]
pub struct RunResult {
    pub best: Solution,
    pub best_profit: u64,
    /// Time at which `best` was recorded.
    pub time_to_best: Duration,
    pub outer_iterations: u64,
    pub trace: Vec<TracePoint>,
    /// No single item fits the knapsack; `best` is empty with profit 0.
    pub infeasible: bool,
    pub seed: u64,
}

impl RunResult {
    /// Profits of the improvement trace, without timing.
    pub fn profit_trace(&self) -> Vec<u64> {
        self.trace.iter().map(|p| p.profit).collect()
    }

    /// Writes one `elapsed_seconds profit` line per improvement.
    pub fn write_trace<W: Write>(&self, mut out: W) -> io::Result<()> {
        for p in &self.trace {
            writeln!(out, "{:.6} {}", p.elapsed.as_secs_f64(), p.profit)?;
        }
        Ok(())
    }
}

/// Exploration phase: alternate VND and tabu search, restarting each VND from
/// the last (not the best) tabu solution, until `lambda_max` consecutive
/// rounds fail to improve the phase's best solution.
pub fn explore<R: Rng + ?Sized>(
    start: Solution,
    inst: &Instance,
    params: &SearchParams,
    freq: &mut FrequencyVector,
    rng: &mut R,
    deadline: Deadline,
) -> Solution {
    let mut best = start.clone();
    let mut current = start;
    let mut stale = 0;
    while stale < params.lambda_max && !deadline.reached() {
        let descended = vnd(current, inst, params, freq, rng, deadline);
        let ts = tabu_search(descended, inst, params, freq, rng, deadline);
        current = ts.last;
        if ts.best.profit() > best.profit() {
            assert!(ts.best.is_feasible(inst));
            best = ts.best;
            stale = 0;
        } else {
            stale += 1;
        }
    }
    best
}

/// One seeded run of the full search under the time budget in `params`.
pub fn run(inst: &Instance, params: &SearchParams) -> Result<RunResult, ParamsError> {
    run_with_observer(inst, params, |_| {})
}

/// Like [`run`], calling `observer` on every global-best improvement.
pub fn run_with_observer(
    inst: &Instance,
    params: &SearchParams,
    mut observer: impl FnMut(&TracePoint),
) -> Result<RunResult, ParamsError> {
    params.validate()?;
    let started = Instant::now();
    let deadline = Deadline::after(params.time_budget);
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);

    let fits_alone = (0..inst.num_items()).any(|i| inst.item_weights()[i] <= inst.capacity());
    if !fits_alone {
        return Ok(RunResult {
            best: Solution::empty(inst),
            best_profit: 0,
            time_to_best: Duration::ZERO,
            outer_iterations: 0,
            trace: Vec::new(),
            infeasible: true,
            seed: params.seed,
        });
    }

    let mut start = greedy_initial_solution(inst, params.greedy_scan);
    let mut best = start.clone();
    let mut time_to_best = started.elapsed();
    let mut trace = vec![TracePoint {
        elapsed: time_to_best,
        profit: best.profit(),
    }];
    observer(&trace[0]);

    let mut freq = FrequencyVector::new(inst.num_items());
    let mut outer = 0u64;
    while !deadline.reached() && params.max_outer_iterations.map_or(true, |cap| outer < cap) {
        let phase_best = explore(start, inst, params, &mut freq, &mut rng, deadline);
        outer += 1;
        if phase_best.profit() > best.profit() {
            assert!(phase_best.is_feasible(inst));
            best = phase_best.clone();
            time_to_best = started.elapsed();
            let point = TracePoint {
                elapsed: time_to_best,
                profit: best.profit(),
            };
            observer(&point);
            trace.push(point);
        }
        start = escape(&phase_best, inst, params.eta, &freq, &mut rng);
    }

    Ok(RunResult {
        best_profit: best.profit(),
        best,
        time_to_best,
        outer_iterations: outer,
        trace,
        infeasible: false,
        seed: params.seed,
    })
}
