//! Thread-pool versions of the two expensive loops: the TL tensor and batch
//! evaluation. Both produce results identical to the sequential code.

use rayon::prelude::*;

use quietvoyage_core::acoustics::{tl_row, PropagationConfig, TlTensor};
use quietvoyage_core::env::Scenario;
use quietvoyage_core::optimizer::{Evaluation, Problem};
use quietvoyage_core::Result;

use crate::error::{AppError, AppResult};

/// Builds a pool with `threads` workers; `None` or 0 uses every core.
pub fn thread_pool(threads: Option<usize>) -> AppResult<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
        .map_err(|e| AppError::Usage(format!("cannot start thread pool: {e}")))
}

/// TL tensor with waypoints computed in parallel.
pub fn tl_tensor(scenario: &Scenario, config: &PropagationConfig) -> Result<TlTensor> {
    config.validate()?;
    let rows = (0..scenario.route().n_waypoints())
        .into_par_iter()
        .map(|i| tl_row(scenario, config, i))
        .collect::<Result<Vec<_>>>()?;
    TlTensor::from_rows(scenario, rows)
}

/// Evaluates batches across the current rayon pool.
#[derive(Debug, Clone)]
pub struct Parallel<P>(pub P);

impl<P: Problem + Sync> Problem for Parallel<P> {
    fn n_vars(&self) -> usize {
        self.0.n_vars()
    }

    fn bounds(&self) -> (f64, f64) {
        self.0.bounds()
    }

    fn evaluate(&self, x: &[f64]) -> Result<Evaluation> {
        self.0.evaluate(x)
    }

    fn evaluate_batch(&self, xs: &[Vec<f64>]) -> Result<Vec<Evaluation>> {
        xs.par_iter().map(|x| self.0.evaluate(x)).collect()
    }

    fn repair(&self, x: &mut [f64]) {
        self.0.repair(x)
    }

    fn anchor(&self) -> Option<Vec<f64>> {
        self.0.anchor()
    }
}
