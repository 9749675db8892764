use serde::{Deserialize, Serialize};

use crate::analysis::DEFAULT_ALPHA;
use crate::error::{Error, Result};
use crate::model::Environment;
use crate::policy::PolicyConfig;

pub const DEFAULT_SIMS: u64 = 10_000;
pub const DEFAULT_SEED: u64 = 2021;
pub const DEFAULT_PHI_SAMPLES: u64 = 100;

/// Offset of the φ̂ diagnostic streams; policy streams use `sim_index` itself.
pub(crate) const PHI_STREAM_OFFSET: u64 = 1 << 63;

fn default_sims() -> u64 {
    DEFAULT_SIMS
}
fn default_seed() -> u64 {
    DEFAULT_SEED
}
fn default_alpha() -> f64 {
    DEFAULT_ALPHA
}
fn default_phi_samples() -> u64 {
    DEFAULT_PHI_SAMPLES
}

/// One Monte-Carlo experiment: a policy run `n_sims` times for `n`
/// participants in a fixed environment.
///
/// The environment is `p* = (0.5 + w/2, 0.5 − w/2)` unless `arm_means`
/// overrides it, in which case `effect_size` must equal `|p₁* − p₂*|`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub policy: PolicyConfig,
    pub effect_size: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arm_means: Option<[f64; 2]>,
    pub n: u64,
    #[serde(default = "default_sims")]
    pub n_sims: u64,
    #[serde(default = "default_seed")]
    pub base_seed: u64,
    #[serde(default = "default_alpha")]
    pub alpha_level: f64,
    #[serde(default)]
    pub record_phi: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub phi_checkpoints: Vec<u64>,
    /// Posterior pairs per φ̂ evaluation.
    #[serde(default = "default_phi_samples")]
    pub phi_samples: u64,
    /// Keep the per-step allocation trace of every simulation.
    #[serde(default)]
    pub trace: bool,
}

impl ExperimentConfig {
    pub fn new(policy: PolicyConfig, effect_size: f64, n: u64) -> Self {
        Self {
            policy,
            effect_size,
            arm_means: None,
            n,
            n_sims: DEFAULT_SIMS,
            base_seed: DEFAULT_SEED,
            alpha_level: DEFAULT_ALPHA,
            record_phi: false,
            phi_checkpoints: Vec::new(),
            phi_samples: DEFAULT_PHI_SAMPLES,
            trace: false,
        }
    }

    pub fn with_sims(mut self, n_sims: u64) -> Self {
        self.n_sims = n_sims;
        self
    }

    pub fn with_seed(mut self, base_seed: u64) -> Self {
        self.base_seed = base_seed;
        self
    }

    pub fn with_arm_means(mut self, arm_means: [f64; 2]) -> Self {
        self.effect_size = (arm_means[0] - arm_means[1]).abs();
        self.arm_means = Some(arm_means);
        self
    }

    pub fn with_phi(mut self, checkpoints: Vec<u64>, samples: u64) -> Self {
        self.record_phi = true;
        self.phi_checkpoints = checkpoints;
        self.phi_samples = samples;
        self
    }

    pub fn environment(&self) -> Result<Environment> {
        match self.arm_means {
            Some(means) => Environment::from_means(means),
            None => Environment::from_effect_size(self.effect_size),
        }
    }

    /// φ̂ threshold, when the policy has one.
    pub(crate) fn phi_threshold(&self) -> Option<f64> {
        match self.policy {
            PolicyConfig::TsPostDiff { c } => Some(c),
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.policy.validate()?;
        if !(0.0..=1.0).contains(&self.effect_size) {
            return Err(Error::invalid(
                "effect_size",
                format!("must lie in [0, 1], got {}", self.effect_size),
            ));
        }
        let env = self.environment()?;
        if (env.effect_size() - self.effect_size).abs() > 1e-9 {
            return Err(Error::invalid(
                "effect_size",
                format!(
                    "{} does not match arm means {:?}",
                    self.effect_size,
                    env.means()
                ),
            ));
        }
        if self.n == 0 {
            return Err(Error::invalid("n", "at least one participant is required"));
        }
        if self.n_sims == 0 || self.n_sims > PHI_STREAM_OFFSET {
            return Err(Error::invalid(
                "n_sims",
                format!("must lie in [1, 2^63], got {}", self.n_sims),
            ));
        }
        if !(self.alpha_level > 0.0 && self.alpha_level < 1.0) {
            return Err(Error::invalid(
                "alpha_level",
                format!("must lie in (0, 1), got {}", self.alpha_level),
            ));
        }
        if self.record_phi {
            if self.phi_threshold().is_none() {
                return Err(Error::invalid(
                    "record_phi",
                    format!("needs a ts-postdiff policy, got {}", self.policy.kind()),
                ));
            }
            if self.phi_checkpoints.is_empty() {
                return Err(Error::invalid(
                    "phi_checkpoints",
                    "at least one checkpoint is required",
                ));
            }
            if self.phi_samples == 0 {
                return Err(Error::invalid("phi_samples", "must be positive"));
            }
            let mut prev = 0;
            for &t in &self.phi_checkpoints {
                if t <= prev || t > self.n {
                    return Err(Error::invalid(
                        "phi_checkpoints",
                        format!(
                            "must be strictly increasing within [1, {}], got {t}",
                            self.n
                        ),
                    ));
                }
                prev = t;
            }
        } else if !self.phi_checkpoints.is_empty() {
            return Err(Error::invalid("phi_checkpoints", "set without record_phi"));
        }
        Ok(())
    }
}
