//! Compare the apparatus-side and particle-side phases of one configuration.

use serde::Serialize;

use crate::error::Result;
use crate::phase::apparatus::phase_apparatus_side;
use crate::phase::particle::phase_particle_side;
use crate::phase::quadrature::QuadratureConfig;
use crate::phase_value::PhaseValue;
use crate::sources::trajectory::ChargeTrajectory;
use crate::sources::wire::Circuit;

/// Headroom over the combined quadrature tolerance allowed for the gap.
pub const RECIPROCITY_HEADROOM: f64 = 10.0;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReciprocityReport {
    /// Charge acting on the circuit currents.
    pub apparatus: PhaseValue,
    /// Circuit potential acting on the charge.
    pub particle: PhaseValue,
    /// |apparatus − particle| / max(|apparatus|, |particle|); zero when both vanish.
    pub relative_gap: f64,
    /// 10 × the sum of both relative tolerances.
    pub bound: f64,
    pub within_bound: bool,
}

pub fn relative_gap(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

pub fn reciprocity_check(
    traj: &ChargeTrajectory,
    circuit: &Circuit,
    cfg: &QuadratureConfig,
) -> Result<ReciprocityReport> {
    let apparatus = phase_apparatus_side(traj, circuit, cfg)?;
    let guard = cfg.singularity_guard;
    let particle = phase_particle_side(traj, |r| circuit.vector_potential(r, guard), cfg)?;
    let gap = relative_gap(apparatus.radians(), particle.radians());
    let bound = RECIPROCITY_HEADROOM * 2.0 * cfg.relative_tolerance;
    Ok(ReciprocityReport {
        apparatus,
        particle,
        relative_gap: gap,
        bound,
        within_bound: gap <= bound,
    })
}
