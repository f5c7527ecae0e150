use std::time::Duration;

use thiserror::Error;

use super::GreedyScan;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParamsError {
    #[error("lambda_max must be at least 1")]
    LambdaMax,
    #[error("rho must lie in [0, 1], got {0}")]
    Rho(f64),
    #[error("omega_max must be at least 1")]
    OmegaMax,
    #[error("eta must lie in (0, 1], got {0}")]
    Eta(f64),
    #[error("time budget must be positive")]
    TimeBudget,
}

/// Tuning knobs of one run.
///
/// Defaults: `lambda_max = 2`, `rho = 0.05`, `omega_max = 100`, `eta = 0.5`,
/// aspiration on, and a 500 s budget.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchParams {
    /// Consecutive non-improving VND-TS rounds before escaping.
    pub lambda_max: usize,
    /// Inclusion probability of each N2 candidate.
    pub rho: f64,
    /// Consecutive non-improving tabu iterations before TS stops.
    pub omega_max: usize,
    /// Fraction of the best solution's items removed by the escape.
    pub eta: f64,
    pub time_budget: Duration,
    pub seed: u64,
    /// Admit tabu moves that beat the tabu search's best profit.
    pub aspiration: bool,
    pub greedy_scan: GreedyScan,
    /// Optional cap on explore/escape cycles; makes runs independent of timing.
    pub max_outer_iterations: Option<u64>,
}

impl Default for SearchParams {
    fn default() -> Self {
        Self {
            lambda_max: 2,
            rho: 0.05,
            omega_max: 100,
            eta: 0.5,
            time_budget: Duration::from_secs(500),
            seed: 0,
            aspiration: true,
            greedy_scan: GreedyScan::default(),
            max_outer_iterations: None,
        }
    }
}

impl SearchParams {
    pub fn with_time_budget(mut self, budget: Duration) -> Self {
        self.time_budget = budget;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// Disables aspiration so tabu prohibitions are never overridden.
    pub fn strict_paper(mut self) -> Self {
        self.aspiration = false;
        self
    }

    pub fn validate(&self) -> Result<(), ParamsError> {
        if self.lambda_max < 1 {
            return Err(ParamsError::LambdaMax);
        }
        if !(0.0..=1.0).contains(&self.rho) {
            return Err(ParamsError::Rho(self.rho));
        }
        if self.omega_max < 1 {
            return Err(ParamsError::OmegaMax);
        }
        if !(self.eta > 0.0 && self.eta <= 1.0) {
            return Err(ParamsError::Eta(self.eta));
        }
        if self.time_budget.is_zero() {
            return Err(ParamsError::TimeBudget);
        }
        Ok(())
    }
}
