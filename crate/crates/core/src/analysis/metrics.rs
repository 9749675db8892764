use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::harness::SimulationResult;
use crate::model::{Arm, Environment};

use super::wald::wald_test;

/// A Monte-Carlo mean and its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    pub se: f64,
}

impl Estimate {
    /// Rate of a per-simulation 0/1 outcome: SE = sqrt(p(1-p)/n).
    pub fn proportion(hits: usize, n: usize) -> Self {
        Self::binomial(hits as f64 / n as f64, n)
    }

    /// A proportion `p` reported with the binomial SE for `n` simulations.
    pub fn binomial(p: f64, n: usize) -> Self {
        Self {
            value: p,
            se: (p * (1.0 - p) / n as f64).sqrt(),
        }
    }

    /// Mean of per-simulation values: SE = sample SD / sqrt(n).
    pub fn mean_of(values: &[f64]) -> Self {
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let se = if values.len() > 1 {
            let ss = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>();
            (ss / (n - 1.0)).sqrt() / n.sqrt()
        } else {
            0.0
        };
        Self { value: mean, se }
    }
}

/// Metrics over a batch of simulations sharing one environment and horizon.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsSummary {
    pub effect_size: f64,
    pub n: u64,
    pub n_sims: usize,
    /// Fraction of simulations rejecting `H0`: the FPR under a null
    /// environment, the power otherwise.
    pub rejection_rate: Estimate,
    pub type_s: Estimate,
    /// Mean reward per participant.
    pub reward: Estimate,
    /// Allocation share of the truly better arm; `None` without a better arm.
    pub prop_opt: Option<Estimate>,
    /// Allocation share of the arm with the higher final sample mean.
    pub prop_sup: Estimate,
}

impl MetricsSummary {
    pub fn is_null(&self) -> bool {
        self.effect_size == 0.0
    }

    pub fn fpr(&self) -> Option<Estimate> {
        self.is_null().then_some(self.rejection_rate)
    }

    pub fn power(&self) -> Option<Estimate> {
        (!self.is_null()).then_some(self.rejection_rate)
    }
}

fn superior_share(result: &SimulationResult) -> f64 {
    let n = (result.pulls[0] + result.pulls[1]) as f64;
    match result.pulls {
        [0, _] | [_, 0] => 1.0,
        [n1, n2] => {
            let m1 = result.successes[0] as f64 / n1 as f64;
            let m2 = result.successes[1] as f64 / n2 as f64;
            if m1 > m2 {
                n1 as f64 / n
            } else if m2 > m1 {
                n2 as f64 / n
            } else {
                0.5
            }
        }
    }
}

/// Aggregates a batch of completed trajectories.
///
/// Each trajectory is re-tested at `alpha_level` from its final counts. A
/// Type-S error is a rejection that names the wrong arm as superior, counted
/// over all simulations. An arm that was never pulled has no sample mean, so
/// the other arm counts as empirically superior.
pub fn aggregate_metrics(
    results: &[SimulationResult],
    env: &Environment,
    alpha_level: f64,
) -> Result<MetricsSummary> {
    let first = results
        .first()
        .ok_or_else(|| Error::Domain("cannot aggregate an empty batch".into()))?;
    let n = first.n();
    if let Some(other) = results.iter().find(|r| r.n() != n) {
        return Err(Error::invalid(
            "results",
            format!("mixed horizons: {n} and {}", other.n()),
        ));
    }
    let superior = env.superior_arm();

    let mut rejections = 0;
    let mut wrong_sign = 0;
    for r in results {
        let test = wald_test(
            r.pulls[0],
            r.successes[0],
            r.pulls[1],
            r.successes[1],
            alpha_level,
        )?;
        if test.reject {
            rejections += 1;
            if superior.is_some() && test.estimated_superior_arm != superior {
                wrong_sign += 1;
            }
        }
    }
    let rewards: Vec<f64> = results
        .iter()
        .map(|r| r.total_reward as f64 / n as f64)
        .collect();
    let prop_opt = superior.map(|arm: Arm| {
        let shares: Vec<f64> = results
            .iter()
            .map(|r| r.pulls[arm.index()] as f64 / n as f64)
            .collect();
        Estimate::mean_of(&shares)
    });
    // Prop. Opt. uses the spread of the per-run shares; Prop. Sup. is reported
    // with a binomial SE over simulations.
    let sup_share = results.iter().map(superior_share).sum::<f64>() / results.len() as f64;

    Ok(MetricsSummary {
        effect_size: env.effect_size(),
        n,
        n_sims: results.len(),
        rejection_rate: Estimate::proportion(rejections, results.len()),
        type_s: Estimate::proportion(wrong_sign, results.len()),
        reward: Estimate::mean_of(&rewards),
        prop_opt,
        prop_sup: Estimate::binomial(sup_share, results.len()),
    })
}
