use crate::error::{Error, Result};

use super::normal::normal_quantile;

/// Total participants for a two-sided two-proportion test under uniform
/// allocation, bounding each arm's variance by 1/4:
/// `ceil((z_{1−α/2} + z_{power})² / w²)`.
pub fn required_sample_size(effect_size: f64, alpha_level: f64, power_target: f64) -> Result<u64> {
    if !(effect_size > 0.0 && effect_size <= 1.0) {
        return Err(Error::Domain(format!(
            "effect size must lie in (0, 1], got {effect_size}"
        )));
    }
    if !(alpha_level > 0.0 && alpha_level < 1.0) {
        return Err(Error::Domain(format!(
            "alpha level must lie in (0, 1), got {alpha_level}"
        )));
    }
    if !(power_target > 0.0 && power_target < 1.0) {
        return Err(Error::Domain(format!(
            "power target must lie in (0, 1), got {power_target}"
        )));
    }
    let z = normal_quantile(1.0 - alpha_level / 2.0)? + normal_quantile(power_target)?;
    Ok((z * z / (effect_size * effect_size)).ceil() as u64)
}
