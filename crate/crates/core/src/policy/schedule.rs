use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exploration rate as a function of the step counter `t` (starting at 1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum EpsilonSchedule {
    /// `min(1, scale * t^(-exponent))`.
    InversePower { scale: f64, exponent: f64 },
    /// `initial * decay^(t - 1)`.
    Exponential { initial: f64, decay: f64 },
}

impl Default for EpsilonSchedule {
    fn default() -> Self {
        EpsilonSchedule::InversePower {
            scale: 1.0,
            exponent: 0.5,
        }
    }
}

impl EpsilonSchedule {
    pub fn epsilon(&self, t: u64) -> f64 {
        let t = t.max(1) as f64;
        match *self {
            EpsilonSchedule::InversePower { scale, exponent } => {
                (scale * t.powf(-exponent)).min(1.0)
            }
            EpsilonSchedule::Exponential { initial, decay } => initial * decay.powf(t - 1.0),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            EpsilonSchedule::InversePower { scale, exponent } => {
                if !(scale >= 0.0 && scale.is_finite()) {
                    return Err(Error::invalid(
                        "schedule.scale",
                        format!("must be non-negative, got {scale}"),
                    ));
                }
                if !(exponent >= 0.0 && exponent.is_finite()) {
                    return Err(Error::invalid(
                        "schedule.exponent",
                        format!("must be non-negative, got {exponent}"),
                    ));
                }
            }
            EpsilonSchedule::Exponential { initial, decay } => {
                if !(0.0..=1.0).contains(&initial) {
                    return Err(Error::invalid(
                        "schedule.initial",
                        format!("must lie in [0, 1], got {initial}"),
                    ));
                }
                if !(decay > 0.0 && decay <= 1.0) {
                    return Err(Error::invalid(
                        "schedule.decay",
                        format!("must lie in (0, 1], got {decay}"),
                    ));
                }
            }
        }
        Ok(())
    }

    pub(crate) fn describe(&self) -> String {
        match *self {
            EpsilonSchedule::InversePower { scale, exponent } => {
                format!("eps(t)=min(1;{scale}*t^-{exponent})")
            }
            EpsilonSchedule::Exponential { initial, decay } => {
                format!("eps(t)={initial}*{decay}^(t-1)")
            }
        }
    }
}
