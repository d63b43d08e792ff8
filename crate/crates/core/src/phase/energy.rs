//! Phases generated by energy: (1/ħ) ∫ ΔE dt.

use serde::{Deserialize, Serialize};

use crate::constants::HBAR;
use crate::error::{require_finite, PhaseError, Result};
use crate::phase_value::PhaseValue;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Particle,
    Source,
}

/// Energy shift of the particle on one interferometer arm, sampled in time,
/// with the matching shift of the rest of the system (always the negation).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnergyProfile {
    times: Vec<f64>,
    particle: Vec<f64>,
    source: Vec<f64>,
}

impl EnergyProfile {
    pub fn new(times: Vec<f64>, particle_delta_e: Vec<f64>) -> Result<Self> {
        if times.is_empty() {
            return Err(PhaseError::EmptyProfile);
        }
        if times.len() != particle_delta_e.len() {
            return Err(PhaseError::MismatchedGrids(format!(
                "{} times but {} energy samples",
                times.len(),
                particle_delta_e.len()
            )));
        }
        for t in &times {
            require_finite("time", *t)?;
        }
        for e in &particle_delta_e {
            require_finite("delta_e", *e)?;
        }
        if times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(PhaseError::InvalidParameter {
                name: "times",
                reason: "must be strictly increasing".into(),
            });
        }
        let source = particle_delta_e.iter().map(|e| -e).collect();
        Ok(Self {
            times,
            particle: particle_delta_e,
            source,
        })
    }

    /// Constant shift `delta_e` held from `t0` to `t1`.
    pub fn constant(delta_e: f64, t0: f64, t1: f64) -> Result<Self> {
        Self::new(vec![t0, t1], vec![delta_e, delta_e])
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn samples(&self, side: Side) -> &[f64] {
        match side {
            Side::Particle => &self.particle,
            Side::Source => &self.source,
        }
    }

    pub fn start_time(&self) -> f64 {
        self.times[0]
    }

    pub fn end_time(&self) -> f64 {
        self.times[self.times.len() - 1]
    }
}

/// Trapezoidal (1/ħ) ∫ ΔE dt for one side of the profile.
///
/// Negation commutes exactly with every floating-point step here, so the
/// source phase is the bit-exact negation of the particle phase.
pub fn phase_energy(profile: &EnergyProfile, side: Side) -> Result<PhaseValue> {
    let e = profile.samples(side);
    if e.is_empty() {
        return Err(PhaseError::EmptyProfile);
    }
    let t = profile.times();
    let integral = t
        .windows(2)
        .zip(e.windows(2))
        .fold(0.0, |acc, (tw, ew)| acc + (tw[1] - tw[0]) * (ew[0] + ew[1]) * 0.5);
    let label = match side {
        Side::Particle => "energy:particle",
        Side::Source => "energy:source",
    };
    Ok(PhaseValue::single(label, integral / HBAR))
}
