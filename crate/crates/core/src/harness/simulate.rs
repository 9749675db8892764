use serde::{Deserialize, Serialize};

use crate::analysis::{wald_test, TestResult};
use crate::error::{Error, Result};
use crate::model::{Arm, Environment};
use crate::policy::{estimate_phi, Branch, PolicyState};
use crate::rng::RngStream;

use super::config::{ExperimentConfig, PHI_STREAM_OFFSET};

/// How many allocations each policy branch produced in one trajectory.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchCounts {
    pub ur: u64,
    pub ts: u64,
    pub exploit: u64,
    pub second_best: u64,
    pub clipped: u64,
}

impl BranchCounts {
    pub fn record(&mut self, branch: Branch) {
        let slot = match branch {
            Branch::Ur => &mut self.ur,
            Branch::Ts => &mut self.ts,
            Branch::Exploit => &mut self.exploit,
            Branch::SecondBest => &mut self.second_best,
            Branch::Clipped => &mut self.clipped,
        };
        *slot += 1;
    }

    pub fn total(&self) -> u64 {
        self.ur + self.ts + self.exploit + self.second_best + self.clipped
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub t: u64,
    pub arm: Arm,
    pub branch: Branch,
    pub reward: bool,
}

/// Final counts and test outcome of one simulated experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationResult {
    pub pulls: [u64; 2],
    pub successes: [u64; 2],
    pub total_reward: u64,
    pub test: TestResult,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi_hat_at_checkpoints: Option<Vec<f64>>,
    pub branch_counts: BranchCounts,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<TraceStep>>,
}

impl SimulationResult {
    /// Result built directly from final counts, tested at `alpha_level`.
    pub fn from_counts(pulls: [u64; 2], successes: [u64; 2], alpha_level: f64) -> Result<Self> {
        let test = wald_test(pulls[0], successes[0], pulls[1], successes[1], alpha_level)?;
        Ok(Self {
            pulls,
            successes,
            total_reward: successes[0] + successes[1],
            test,
            phi_hat_at_checkpoints: None,
            branch_counts: BranchCounts::default(),
            trace: None,
        })
    }

    /// Participants in the trajectory.
    pub fn n(&self) -> u64 {
        self.pulls[0] + self.pulls[1]
    }

    pub fn ur_branch_count(&self) -> u64 {
        self.branch_counts.ur
    }
}

/// Runs simulation `sim_index` of `config`.
///
/// The trajectory depends only on `(config.base_seed, sim_index)`. Each step
/// draws the policy's variates first and then the reward from the same
/// stream. φ̂ diagnostics use a separate stream so recording them leaves the
/// trajectory unchanged.
pub fn run_simulation(config: &ExperimentConfig, sim_index: u64) -> Result<SimulationResult> {
    config.validate()?;
    if sim_index >= config.n_sims {
        return Err(Error::invalid(
            "sim_index",
            format!("{sim_index} outside [0, {})", config.n_sims),
        ));
    }
    let env = config.environment()?;
    simulate(config, &env, sim_index)
}

/// Simulation body for an already validated config.
pub(crate) fn simulate(
    config: &ExperimentConfig,
    env: &Environment,
    sim_index: u64,
) -> Result<SimulationResult> {
    let mut rng = RngStream::new(config.base_seed, sim_index);
    let phi = match (config.record_phi, config.phi_threshold()) {
        (true, Some(c)) => Some((
            c,
            RngStream::new(config.base_seed, PHI_STREAM_OFFSET + sim_index),
            Vec::with_capacity(config.phi_checkpoints.len()),
        )),
        _ => None,
    };
    let mut phi = phi;
    let mut checkpoints = config.phi_checkpoints.iter().peekable();
    let mut trace = config.trace.then(|| Vec::with_capacity(config.n as usize));
    let mut branch_counts = BranchCounts::default();
    let mut state = PolicyState::new();

    for t in 1..=config.n {
        let choice = config.policy.select(&state, &mut rng);
        let reward = env.draw_reward(choice.arm, &mut rng);
        state.observe(choice.arm, reward);
        branch_counts.record(choice.branch);
        if let Some(trace) = trace.as_mut() {
            trace.push(TraceStep {
                t,
                arm: choice.arm,
                branch: choice.branch,
                reward,
            });
        }
        if checkpoints.peek() == Some(&&t) {
            checkpoints.next();
            if let Some((c, phi_rng, values)) = phi.as_mut() {
                values.push(estimate_phi(&state, *c, config.phi_samples, phi_rng)?);
            }
        }
    }

    let pulls = state.pulls();
    let successes = state.successes();
    let test = wald_test(
        pulls[0],
        successes[0],
        pulls[1],
        successes[1],
        config.alpha_level,
    )?;
    Ok(SimulationResult {
        pulls,
        successes,
        total_reward: successes[0] + successes[1],
        test,
        phi_hat_at_checkpoints: phi.map(|(_, _, values)| values),
        branch_counts,
        trace,
    })
}
