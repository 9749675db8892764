use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{aggregate_metrics, MetricsSummary};
use crate::error::{Error, Result};
use crate::policy::PolicyKind;

use super::config::ExperimentConfig;
use super::simulate::{simulate, SimulationResult};

/// Metrics of a batch plus the per-simulation results they came from.
#[derive(Debug, Clone, PartialEq)]
pub struct Experiment {
    pub summary: MetricsSummary,
    pub results: Vec<SimulationResult>,
}

/// Runs every simulation of `config` on the global rayon pool.
///
/// Simulations are independent and collected in index order, so the output
/// does not depend on scheduling or the number of threads.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Experiment> {
    config.validate()?;
    let env = config.environment()?;
    let results = (0..config.n_sims)
        .into_par_iter()
        .map(|i| {
            simulate(config, &env, i).map_err(|e| Error::Simulation {
                index: i,
                source: Box::new(e),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let summary = aggregate_metrics(&results, &env, config.alpha_level)?;
    Ok(Experiment { summary, results })
}

/// [`run_experiment`] on a dedicated pool of `workers` threads
/// (`1` runs serially).
pub fn run_experiment_with_workers(
    config: &ExperimentConfig,
    workers: usize,
) -> Result<Experiment> {
    if workers == 0 {
        return Err(Error::invalid("workers", "must be positive"));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::invalid("workers", e.to_string()))?;
    pool.install(|| run_experiment(config))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub config: ExperimentConfig,
    pub summary: MetricsSummary,
}

/// Identity of a sweep row: policy, parameters, environment and horizon.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct RowKey {
    kind: PolicyKind,
    params: String,
    effect_size: u64,
    arm_means: Option<[u64; 2]>,
    n: u64,
}

impl RowKey {
    fn of(config: &ExperimentConfig) -> Self {
        Self {
            kind: config.policy.kind(),
            params: config.policy.params(),
            effect_size: config.effect_size.to_bits(),
            arm_means: config.arm_means.map(|m| m.map(f64::to_bits)),
            n: config.n,
        }
    }
}

/// Runs each configuration of a grid, keeping only the summaries.
pub fn sweep(grid: &[ExperimentConfig]) -> Result<Vec<SweepRow>> {
    if grid.is_empty() {
        return Err(Error::invalid(
            "grid",
            "at least one configuration is required",
        ));
    }
    let mut seen = HashSet::new();
    for config in grid {
        config.validate()?;
        if !seen.insert(RowKey::of(config)) {
            return Err(Error::invalid(
                "grid",
                format!(
                    "duplicate row {} at effect size {} with n = {}",
                    config.policy, config.effect_size, config.n
                ),
            ));
        }
    }
    grid.iter()
        .map(|config| {
            run_experiment(config).map(|e| SweepRow {
                config: config.clone(),
                summary: e.summary,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhiPoint {
    pub t: u64,
    pub mean_phi: f64,
}

/// Cross-simulation mean of φ̂ at each checkpoint of a TS PostDiff run.
pub fn phi_curve(config: &ExperimentConfig) -> Result<Vec<PhiPoint>> {
    if !config.record_phi {
        return Err(Error::invalid(
            "record_phi",
            "phi curves need record_phi = true",
        ));
    }
    let experiment = run_experiment(config)?;
    let mut sums = vec![0.0; config.phi_checkpoints.len()];
    for result in &experiment.results {
        let values = result
            .phi_hat_at_checkpoints
            .as_ref()
            .expect("phi recorded for every simulation");
        for (sum, v) in sums.iter_mut().zip(values) {
            *sum += v;
        }
    }
    let sims = experiment.results.len() as f64;
    Ok(config
        .phi_checkpoints
        .iter()
        .zip(sums)
        .map(|(&t, sum)| PhiPoint {
            t,
            mean_phi: sum / sims,
        })
        .collect())
}
