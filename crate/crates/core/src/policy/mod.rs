//! Allocation policies for the two-armed Bernoulli bandit.
//!
//! Every policy maps the current [`PolicyState`] and a random stream to an
//! [`ArmChoice`]. Policies never mutate the state; the harness applies
//! posterior updates after the reward is observed.

mod schedule;
mod select;
mod win_prob;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Arm, ArmPosterior};
use crate::rng::RngStream;

pub use schedule::EpsilonSchedule;
pub use select::{
    estimate_phi, select_epsilon_mix, select_greedy, select_top2_ts, select_ts, select_ts_postdiff,
    select_ts_probclip, select_uniform, MixBase,
};
pub use win_prob::{
    prob_first_arm_beats_second, prob_first_arm_beats_second_or_estimate, WinProbMethod,
    WinProbability,
};

/// Which rule produced an allocation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    /// Uniform random allocation.
    Ur,
    /// Argmax of posterior samples.
    Ts,
    /// Argmax of posterior means.
    Exploit,
    /// Top-two: the arm with the lower sample.
    SecondBest,
    /// Probability clipping bound the assignment probability.
    Clipped,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArmChoice {
    pub arm: Arm,
    pub branch: Branch,
}

impl ArmChoice {
    pub(crate) fn new(arm: Arm, branch: Branch) -> Self {
        Self { arm, branch }
    }
}

/// Posterior beliefs and the step counter seen by a policy.
///
/// `t` is the index of the participant about to be allocated, so a fresh
/// state has `t = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolicyState {
    posteriors: [ArmPosterior; 2],
    t: u64,
}

impl Default for PolicyState {
    fn default() -> Self {
        Self::new()
    }
}

impl PolicyState {
    pub fn new() -> Self {
        Self {
            posteriors: [ArmPosterior::UNIFORM; 2],
            t: 1,
        }
    }

    /// State with arbitrary posteriors; the step counter follows the implied pulls.
    pub fn from_posteriors(posteriors: [ArmPosterior; 2]) -> Self {
        let seen = posteriors
            .iter()
            .map(|p| p.observations().max(0.0))
            .sum::<f64>();
        Self {
            posteriors,
            t: seen.round() as u64 + 1,
        }
    }

    pub fn from_counts(pulls: [u64; 2], successes: [u64; 2]) -> Result<Self> {
        for k in 0..2 {
            if successes[k] > pulls[k] {
                return Err(Error::invalid(
                    format!("successes[{k}]"),
                    format!("{} exceeds pulls {}", successes[k], pulls[k]),
                ));
            }
        }
        Ok(Self::from_posteriors([0, 1].map(|k| {
            ArmPosterior::from_counts(successes[k], pulls[k] - successes[k])
        })))
    }

    #[inline]
    pub fn posterior(&self, arm: Arm) -> &ArmPosterior {
        &self.posteriors[arm.index()]
    }

    pub fn posteriors(&self) -> &[ArmPosterior; 2] {
        &self.posteriors
    }

    #[inline]
    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn pulls(&self) -> [u64; 2] {
        self.posteriors.map(|p| p.observations().round() as u64)
    }

    pub fn successes(&self) -> [u64; 2] {
        self.posteriors.map(|p| (p.alpha - 1.0).round() as u64)
    }

    /// Absorbs the reward of the participant just allocated to `arm`.
    pub fn observe(&mut self, arm: Arm, reward: bool) {
        let slot = &mut self.posteriors[arm.index()];
        *slot = slot.update(reward);
        self.t += 1;
    }

    /// One independent posterior draw per arm.
    #[inline]
    pub(crate) fn sample_pair(&self, rng: &mut RngStream) -> [f64; 2] {
        let p1 = self.posteriors[0].sample(rng);
        let p2 = self.posteriors[1].sample(rng);
        [p1, p2]
    }
}

/// An allocation rule and its parameters.
///
/// Serialized as a flat object with a `kind` tag; parameters that do not
/// belong to the kind are rejected on deserialization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PolicySpec", into = "PolicySpec")]
pub enum PolicyConfig {
    UniformRandom,
    ThompsonSampling,
    Greedy,
    EpsilonGreedy { epsilon: f64 },
    EpsilonTs { epsilon: f64 },
    DecliningEpsilonGreedy { schedule: EpsilonSchedule },
    DecliningEpsilonTs { schedule: EpsilonSchedule },
    TopTwoTs { beta: f64 },
    TsPostDiff { c: f64 },
    TsProbClip { p_max: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PolicyKind {
    #[serde(alias = "ur")]
    Uniform,
    #[serde(alias = "thompson")]
    Ts,
    Greedy,
    EpsilonGreedy,
    EpsilonTs,
    DecliningEpsilonGreedy,
    DecliningEpsilonTs,
    #[serde(alias = "top2-ts", alias = "top2")]
    TopTwoTs,
    #[serde(alias = "postdiff")]
    TsPostdiff,
    #[serde(alias = "probclip")]
    TsProbclip,
}

impl PolicyKind {
    pub const ALL: [PolicyKind; 10] = [
        PolicyKind::Uniform,
        PolicyKind::Ts,
        PolicyKind::Greedy,
        PolicyKind::EpsilonGreedy,
        PolicyKind::EpsilonTs,
        PolicyKind::DecliningEpsilonGreedy,
        PolicyKind::DecliningEpsilonTs,
        PolicyKind::TopTwoTs,
        PolicyKind::TsPostdiff,
        PolicyKind::TsProbclip,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PolicyKind::Uniform => "uniform",
            PolicyKind::Ts => "ts",
            PolicyKind::Greedy => "greedy",
            PolicyKind::EpsilonGreedy => "epsilon-greedy",
            PolicyKind::EpsilonTs => "epsilon-ts",
            PolicyKind::DecliningEpsilonGreedy => "declining-epsilon-greedy",
            PolicyKind::DecliningEpsilonTs => "declining-epsilon-ts",
            PolicyKind::TopTwoTs => "top-two-ts",
            PolicyKind::TsPostdiff => "ts-postdiff",
            PolicyKind::TsProbclip => "ts-probclip",
        }
    }

    /// Parses a kind name, accepting the short aliases (`ur`, `postdiff`, ...).
    pub fn parse(name: &str) -> Result<Self> {
        serde::Deserialize::deserialize(
            serde::de::value::StrDeserializer::<serde::de::value::Error>::new(name),
        )
        .map_err(|_| {
            let known: Vec<_> = Self::ALL.iter().map(|k| k.name()).collect();
            Error::invalid(
                "policy",
                format!(
                    "unknown policy `{name}` (expected one of {})",
                    known.join(", ")
                ),
            )
        })
    }
}

impl fmt::Display for PolicyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Flat, loosely typed form of [`PolicyConfig`] used for config files and CLI flags.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolicySpec {
    pub kind: PolicyKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schedule: Option<EpsilonSchedule>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_max: Option<f64>,
}

impl PolicySpec {
    pub fn new(kind: PolicyKind) -> Self {
        Self {
            kind,
            c: None,
            beta: None,
            epsilon: None,
            schedule: None,
            p_max: None,
        }
    }
}

fn required(value: Option<f64>, field: &str, kind: PolicyKind) -> Result<f64> {
    value.ok_or_else(|| Error::invalid(field, format!("required by policy {kind}")))
}

impl TryFrom<PolicySpec> for PolicyConfig {
    type Error = Error;

    fn try_from(spec: PolicySpec) -> Result<Self> {
        let kind = spec.kind;
        let used: &[&str] = match kind {
            PolicyKind::Uniform | PolicyKind::Ts | PolicyKind::Greedy => &[],
            PolicyKind::EpsilonGreedy | PolicyKind::EpsilonTs => &["epsilon"],
            PolicyKind::DecliningEpsilonGreedy | PolicyKind::DecliningEpsilonTs => &["schedule"],
            PolicyKind::TopTwoTs => &["beta"],
            PolicyKind::TsPostdiff => &["c"],
            PolicyKind::TsProbclip => &["p_max"],
        };
        let present = [
            ("c", spec.c.is_some()),
            ("beta", spec.beta.is_some()),
            ("epsilon", spec.epsilon.is_some()),
            ("schedule", spec.schedule.is_some()),
            ("p_max", spec.p_max.is_some()),
        ];
        if let Some((field, _)) = present.iter().find(|(f, set)| *set && !used.contains(f)) {
            return Err(Error::invalid(
                *field,
                format!("not a parameter of policy {kind}"),
            ));
        }
        let config = match kind {
            PolicyKind::Uniform => PolicyConfig::UniformRandom,
            PolicyKind::Ts => PolicyConfig::ThompsonSampling,
            PolicyKind::Greedy => PolicyConfig::Greedy,
            PolicyKind::EpsilonGreedy => PolicyConfig::EpsilonGreedy {
                epsilon: required(spec.epsilon, "epsilon", kind)?,
            },
            PolicyKind::EpsilonTs => PolicyConfig::EpsilonTs {
                epsilon: required(spec.epsilon, "epsilon", kind)?,
            },
            PolicyKind::DecliningEpsilonGreedy => PolicyConfig::DecliningEpsilonGreedy {
                schedule: spec.schedule.unwrap_or_default(),
            },
            PolicyKind::DecliningEpsilonTs => PolicyConfig::DecliningEpsilonTs {
                schedule: spec.schedule.unwrap_or_default(),
            },
            PolicyKind::TopTwoTs => PolicyConfig::TopTwoTs {
                beta: required(spec.beta, "beta", kind)?,
            },
            PolicyKind::TsPostdiff => PolicyConfig::TsPostDiff {
                c: required(spec.c, "c", kind)?,
            },
            PolicyKind::TsProbclip => PolicyConfig::TsProbClip {
                p_max: required(spec.p_max, "p_max", kind)?,
            },
        };
        config.validate()?;
        Ok(config)
    }
}

impl From<PolicyConfig> for PolicySpec {
    fn from(config: PolicyConfig) -> Self {
        let mut spec = PolicySpec::new(config.kind());
        match config {
            PolicyConfig::UniformRandom | PolicyConfig::ThompsonSampling | PolicyConfig::Greedy => {
            }
            PolicyConfig::EpsilonGreedy { epsilon } | PolicyConfig::EpsilonTs { epsilon } => {
                spec.epsilon = Some(epsilon)
            }
            PolicyConfig::DecliningEpsilonGreedy { schedule }
            | PolicyConfig::DecliningEpsilonTs { schedule } => spec.schedule = Some(schedule),
            PolicyConfig::TopTwoTs { beta } => spec.beta = Some(beta),
            PolicyConfig::TsPostDiff { c } => spec.c = Some(c),
            PolicyConfig::TsProbClip { p_max } => spec.p_max = Some(p_max),
        }
        spec
    }
}

fn check_range(field: &str, value: f64, lo: f64, hi: f64) -> Result<()> {
    if (lo..=hi).contains(&value) {
        Ok(())
    } else {
        Err(Error::invalid(
            field,
            format!("must lie in [{lo}, {hi}], got {value}"),
        ))
    }
}

impl PolicyConfig {
    /// Top-two TS matching ε-TS on two arms: `β = 1 − ε/2`.
    pub fn top_two_from_epsilon(epsilon: f64) -> Result<Self> {
        check_range("epsilon", epsilon, 0.0, 1.0)?;
        Ok(PolicyConfig::TopTwoTs {
            beta: 1.0 - epsilon / 2.0,
        })
    }

    pub fn kind(&self) -> PolicyKind {
        match self {
            PolicyConfig::UniformRandom => PolicyKind::Uniform,
            PolicyConfig::ThompsonSampling => PolicyKind::Ts,
            PolicyConfig::Greedy => PolicyKind::Greedy,
            PolicyConfig::EpsilonGreedy { .. } => PolicyKind::EpsilonGreedy,
            PolicyConfig::EpsilonTs { .. } => PolicyKind::EpsilonTs,
            PolicyConfig::DecliningEpsilonGreedy { .. } => PolicyKind::DecliningEpsilonGreedy,
            PolicyConfig::DecliningEpsilonTs { .. } => PolicyKind::DecliningEpsilonTs,
            PolicyConfig::TopTwoTs { .. } => PolicyKind::TopTwoTs,
            PolicyConfig::TsPostDiff { .. } => PolicyKind::TsPostdiff,
            PolicyConfig::TsProbClip { .. } => PolicyKind::TsProbclip,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            PolicyConfig::UniformRandom | PolicyConfig::ThompsonSampling | PolicyConfig::Greedy => {
                Ok(())
            }
            PolicyConfig::EpsilonGreedy { epsilon } | PolicyConfig::EpsilonTs { epsilon } => {
                check_range("epsilon", epsilon, 0.0, 1.0)
            }
            PolicyConfig::DecliningEpsilonGreedy { schedule }
            | PolicyConfig::DecliningEpsilonTs { schedule } => schedule.validate(),
            PolicyConfig::TopTwoTs { beta } => check_range("beta", beta, 0.0, 1.0),
            PolicyConfig::TsPostDiff { c } => check_range("c", c, 0.0, 1.0),
            PolicyConfig::TsProbClip { p_max } => check_range("p_max", p_max, 0.5, 1.0),
        }
    }

    /// Parameter summary such as `c=0.1`; empty for parameter-free policies.
    pub fn params(&self) -> String {
        match self {
            PolicyConfig::UniformRandom | PolicyConfig::ThompsonSampling | PolicyConfig::Greedy => {
                String::new()
            }
            PolicyConfig::EpsilonGreedy { epsilon } | PolicyConfig::EpsilonTs { epsilon } => {
                format!("epsilon={epsilon}")
            }
            PolicyConfig::DecliningEpsilonGreedy { schedule }
            | PolicyConfig::DecliningEpsilonTs { schedule } => schedule.describe(),
            PolicyConfig::TopTwoTs { beta } => format!("beta={beta}"),
            PolicyConfig::TsPostDiff { c } => format!("c={c}"),
            PolicyConfig::TsProbClip { p_max } => format!("p_max={p_max}"),
        }
    }

    /// Chooses the arm for participant `state.t()`.
    pub fn select(&self, state: &PolicyState, rng: &mut RngStream) -> ArmChoice {
        match *self {
            PolicyConfig::UniformRandom => select_uniform(state, rng),
            PolicyConfig::ThompsonSampling => select_ts(state, rng),
            PolicyConfig::Greedy => select_greedy(state, rng),
            PolicyConfig::EpsilonGreedy { epsilon } => mix(MixBase::Greedy, epsilon, state, rng),
            PolicyConfig::EpsilonTs { epsilon } => mix(MixBase::Ts, epsilon, state, rng),
            PolicyConfig::DecliningEpsilonGreedy { schedule } => {
                mix(MixBase::Greedy, schedule.epsilon(state.t()), state, rng)
            }
            PolicyConfig::DecliningEpsilonTs { schedule } => {
                mix(MixBase::Ts, schedule.epsilon(state.t()), state, rng)
            }
            PolicyConfig::TopTwoTs { beta } => select_top2_ts(state, beta, rng),
            PolicyConfig::TsPostDiff { c } => select_ts_postdiff(state, c, rng),
            PolicyConfig::TsProbClip { p_max } => select_ts_probclip(state, p_max, rng),
        }
    }
}

fn mix(base: MixBase, epsilon: f64, state: &PolicyState, rng: &mut RngStream) -> ArmChoice {
    // Validated configs and schedules always produce epsilon in [0, 1].
    select_epsilon_mix(base, epsilon.clamp(0.0, 1.0), state, rng).expect("epsilon in [0, 1]")
}

impl fmt::Display for PolicyConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params = self.params();
        if params.is_empty() {
            write!(f, "{}", self.kind())
        } else {
            write!(f, "{}({})", self.kind(), params)
        }
    }
}
