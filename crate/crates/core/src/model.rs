//! Two-armed Bernoulli environment and Beta posteriors.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::RngStream;

/// One of the two experimental conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum Arm {
    First,
    Second,
}

impl Arm {
    pub const BOTH: [Arm; 2] = [Arm::First, Arm::Second];

    /// Zero-based slot, for indexing per-arm arrays.
    #[inline]
    pub const fn index(self) -> usize {
        match self {
            Arm::First => 0,
            Arm::Second => 1,
        }
    }

    /// One-based label (1 or 2).
    #[inline]
    pub const fn number(self) -> u8 {
        self.index() as u8 + 1
    }

    #[inline]
    pub const fn other(self) -> Arm {
        match self {
            Arm::First => Arm::Second,
            Arm::Second => Arm::First,
        }
    }

    pub fn from_number(number: u8) -> Result<Arm> {
        match number {
            1 => Ok(Arm::First),
            2 => Ok(Arm::Second),
            _ => Err(Error::invalid(
                "arm",
                format!("must be 1 or 2, got {number}"),
            )),
        }
    }
}

impl TryFrom<u8> for Arm {
    type Error = Error;

    fn try_from(value: u8) -> Result<Self> {
        Arm::from_number(value)
    }
}

impl From<Arm> for u8 {
    fn from(arm: Arm) -> u8 {
        arm.number()
    }
}

impl fmt::Display for Arm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

/// True success rates of the two arms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Environment {
    p_star: [f64; 2],
    effect_size: f64,
}

impl Environment {
    /// Symmetric environment around 0.5 with arm 1 superior by `w`.
    pub fn from_effect_size(w: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&w) {
            return Err(Error::invalid(
                "effect_size",
                format!("must lie in [0, 1], got {w}"),
            ));
        }
        Ok(Self {
            p_star: [0.5 + w / 2.0, 0.5 - w / 2.0],
            effect_size: w,
        })
    }

    /// Arbitrary arm means; the effect size is their absolute difference.
    pub fn from_means(p_star: [f64; 2]) -> Result<Self> {
        for (k, p) in p_star.iter().enumerate() {
            if !(0.0..=1.0).contains(p) {
                return Err(Error::invalid(
                    format!("arm_means[{k}]"),
                    format!("must lie in [0, 1], got {p}"),
                ));
            }
        }
        Ok(Self {
            p_star,
            effect_size: (p_star[0] - p_star[1]).abs(),
        })
    }

    #[inline]
    pub fn mean(&self, arm: Arm) -> f64 {
        self.p_star[arm.index()]
    }

    pub fn means(&self) -> [f64; 2] {
        self.p_star
    }

    pub fn effect_size(&self) -> f64 {
        self.effect_size
    }

    /// The arm with the strictly larger success rate, if any.
    pub fn superior_arm(&self) -> Option<Arm> {
        let [p1, p2] = self.p_star;
        if p1 > p2 {
            Some(Arm::First)
        } else if p2 > p1 {
            Some(Arm::Second)
        } else {
            None
        }
    }

    /// Samples a Bernoulli reward for `arm`, consuming one uniform variate.
    #[inline]
    pub fn draw_reward(&self, arm: Arm, rng: &mut RngStream) -> bool {
        rng.bernoulli(self.mean(arm))
    }
}

/// Reward draw addressed by the one-based arm label.
pub fn draw_reward(env: &Environment, arm: u8, rng: &mut RngStream) -> Result<bool> {
    Ok(env.draw_reward(Arm::from_number(arm)?, rng))
}

/// `Beta(alpha, beta)` belief over one arm's success rate.
///
/// Counts are kept as reals; with the unit prior and binary rewards they stay
/// integral, which the exact win-probability sum relies on.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArmPosterior {
    pub alpha: f64,
    pub beta: f64,
}

impl Default for ArmPosterior {
    fn default() -> Self {
        Self::UNIFORM
    }
}

impl ArmPosterior {
    pub const UNIFORM: ArmPosterior = ArmPosterior {
        alpha: 1.0,
        beta: 1.0,
    };

    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::invalid(
                "alpha",
                format!("must be positive, got {alpha}"),
            ));
        }
        if !(beta > 0.0 && beta.is_finite()) {
            return Err(Error::invalid(
                "beta",
                format!("must be positive, got {beta}"),
            ));
        }
        Ok(Self { alpha, beta })
    }

    /// Posterior after `successes` and `failures` starting from the unit prior.
    pub fn from_counts(successes: u64, failures: u64) -> Self {
        Self {
            alpha: 1.0 + successes as f64,
            beta: 1.0 + failures as f64,
        }
    }

    #[must_use]
    #[inline]
    pub fn update(self, reward: bool) -> Self {
        if reward {
            Self {
                alpha: self.alpha + 1.0,
                ..self
            }
        } else {
            Self {
                beta: self.beta + 1.0,
                ..self
            }
        }
    }

    #[inline]
    pub fn mean(&self) -> f64 {
        self.alpha / (self.alpha + self.beta)
    }

    /// Number of observations absorbed on top of the unit prior.
    pub fn observations(&self) -> f64 {
        self.alpha + self.beta - 2.0
    }

    pub fn is_integral(&self) -> bool {
        self.alpha.fract() == 0.0 && self.beta.fract() == 0.0
    }

    pub fn sample(&self, rng: &mut RngStream) -> f64 {
        // Parameters are validated at construction, so the sampler cannot fail.
        rng.beta(self.alpha, self.beta)
            .expect("posterior parameters are positive")
    }
}

/// Conjugate update of a Beta posterior with one binary reward.
pub fn posterior_update(post: ArmPosterior, reward: bool) -> ArmPosterior {
    post.update(reward)
}
