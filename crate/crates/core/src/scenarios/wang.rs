//! Whether a superconducting shield can follow the magnetic pulse of a
//! passing electron: it cannot once 1/τ exceeds k·T_c/ħ.

use serde::{Deserialize, Serialize};

use crate::constants::{BOLTZMANN, HBAR};
use crate::error::{require_positive, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WangCheck {
    pub pulse_duration: f64,
    pub critical_temperature: f64,
    /// 1/τ, Hz.
    pub frequency: f64,
    /// k·T_c/ħ, Hz.
    pub threshold: f64,
    /// frequency / threshold.
    pub ratio: f64,
    pub shield_transparent: bool,
}

/// The ratio is formed as (ħ/kT_c)/τ so that τ = ħ/(kT_c) gives exactly 1.
pub fn run_wang_check(pulse_duration: f64, critical_temperature: f64) -> Result<WangCheck> {
    require_positive("pulse_duration", pulse_duration)?;
    require_positive("critical_temperature", critical_temperature)?;
    let boundary = boundary_duration(critical_temperature);
    let ratio = boundary / pulse_duration;
    Ok(WangCheck {
        pulse_duration,
        critical_temperature,
        frequency: 1.0 / pulse_duration,
        threshold: BOLTZMANN * critical_temperature / HBAR,
        ratio,
        shield_transparent: ratio > 1.0,
    })
}

/// Pulse duration ħ/(k·T_c) at which the verdict flips.
pub fn boundary_duration(critical_temperature: f64) -> f64 {
    HBAR / (BOLTZMANN * critical_temperature)
}
