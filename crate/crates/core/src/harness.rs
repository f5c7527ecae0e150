//! Repeated seeded runs and the summary tables built from them.

use std::fmt::Write as _;

use rayon::prelude::*;
use thiserror::Error;

use crate::i2pls::{run, ParamsError, RunResult, SearchParams};
use crate::instance::Instance;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("at least one run is required")]
    NoRuns,
    #[error("at least one job is required")]
    NoJobs,
    #[error("nothing to tabulate")]
    EmptyTable,
    #[error(transparent)]
    Params(#[from] ParamsError),
    #[error("failed to start worker pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

/// Outcome of one run inside a benchmark.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub seed: u64,
    pub profit: u64,
    pub time_to_best: f64,
    pub feasible: bool,
    pub infeasible_instance: bool,
}

impl RunRecord {
    fn from_result(inst: &Instance, res: &RunResult) -> Self {
        Self {
            seed: res.seed,
            profit: res.best_profit,
            time_to_best: res.time_to_best.as_secs_f64(),
            feasible: res.best.is_feasible(inst),
            infeasible_instance: res.infeasible,
        }
    }
}

/// Summary statistics over repeated runs.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchStats {
    pub f_best: u64,
    pub f_avg: f64,
    /// Population standard deviation of the run profits.
    pub std: f64,
    /// Mean time to each run's own best, in seconds.
    pub t_avg: f64,
    pub runs: usize,
    pub per_run: Vec<RunRecord>,
}

impl BenchStats {
    /// Aggregates records; the result does not depend on their order.
    pub fn from_records(mut per_run: Vec<RunRecord>) -> Result<Self, HarnessError> {
        if per_run.is_empty() {
            return Err(HarnessError::NoRuns);
        }
        per_run.sort_by_key(|r| r.seed);
        let runs = per_run.len();
        let n = runs as f64;
        let f_best = per_run.iter().map(|r| r.profit).max().unwrap_or(0);
        let total: u128 = per_run.iter().map(|r| r.profit as u128).sum();
        let f_avg = total as f64 / n;
        // exact integer sum of squared deviations scaled by n^2
        let sq: u128 = per_run
            .iter()
            .map(|r| {
                let d = r.profit as i128 * runs as i128 - total as i128;
                (d * d) as u128
            })
            .sum();
        let std = (sq as f64 / (n * n * n)).sqrt();
        let t_avg = per_run.iter().map(|r| r.time_to_best).sum::<f64>() / n;
        Ok(Self {
            f_best,
            f_avg,
            std,
            t_avg,
            runs,
            per_run,
        })
    }
}

/// Runs `repeats` independent searches with seeds `base_seed + k` on up to
/// `jobs` worker threads.
pub fn bench(
    inst: &Instance,
    params: &SearchParams,
    repeats: usize,
    base_seed: u64,
    jobs: usize,
) -> Result<BenchStats, HarnessError> {
    let seeds: Vec<u64> = (0..repeats as u64)
        .map(|k| base_seed.wrapping_add(k))
        .collect();
    bench_with_seeds(inst, params, &seeds, jobs)
}

/// Runs one search per entry of `seeds`; repeated seeds give repeated runs.
pub fn bench_with_seeds(
    inst: &Instance,
    params: &SearchParams,
    seeds: &[u64],
    jobs: usize,
) -> Result<BenchStats, HarnessError> {
    if seeds.is_empty() {
        return Err(HarnessError::NoRuns);
    }
    if jobs == 0 {
        return Err(HarnessError::NoJobs);
    }
    params.validate()?;
    let one = |seed: u64| -> Result<RunRecord, HarnessError> {
        let res = run(inst, &params.clone().with_seed(seed))?;
        if res.infeasible {
            log::warn!("seed {seed}: no item fits the knapsack, recording profit 0");
        }
        Ok(RunRecord::from_result(inst, &res))
    };
    let records: Vec<RunRecord> = if jobs == 1 {
        seeds.iter().map(|&s| one(s)).collect::<Result<_, _>>()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build()?;
        pool.install(|| seeds.par_iter().map(|&s| one(s)).collect::<Result<_, _>>())?
    };
    BenchStats::from_records(records)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Markdown,
}

pub const TABLE_COLUMNS: [&str; 5] = ["instance", "f_best", "f_avg", "std", "t_avg"];

fn row_cells(name: &str, s: &BenchStats) -> [String; 5] {
    [
        name.to_string(),
        s.f_best.to_string(),
        format!("{:.2}", s.f_avg),
        format!("{:.2}", s.std),
        format!("{:.3}", s.t_avg),
    ]
}

/// Renders one row per instance with the columns of [`TABLE_COLUMNS`].
pub fn format_table(
    rows: &[(String, BenchStats)],
    format: TableFormat,
) -> Result<String, HarnessError> {
    if rows.is_empty() {
        return Err(HarnessError::EmptyTable);
    }
    match format {
        TableFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(TABLE_COLUMNS)?;
            for (name, stats) in rows {
                w.write_record(row_cells(name, stats))?;
            }
            let bytes = w
                .into_inner()
                .map_err(|e| csv::Error::from(e.into_error()))?;
            Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
        }
        TableFormat::Markdown => {
            let mut s = String::new();
            let _ = writeln!(s, "| {} |", TABLE_COLUMNS.join(" | "));
            s.push_str("|---|---:|---:|---:|---:|\n");
            for (name, stats) in rows {
                let _ = writeln!(
                    s,
                    "| {} |",
                    row_cells(&name.replace('|', "\\|"), stats).join(" | ")
                );
            }
            Ok(s)
        }
    }
}
