//! Phase of the particle acting on the induced shield current, for two paths.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::phase::apparatus::phase_apparatus_side;
use crate::phase::quadrature::QuadratureConfig;
use crate::phase_value::PhaseValue;
use crate::scenarios::{LabeledPhase, ScenarioResult, Tolerances};
use crate::sources::trajectory::ChargeTrajectory;
use crate::sources::wire::Circuit;

pub const NAME: &str = "shield_path_independence";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SymmetryClaim {
    /// Paths are symmetric images; equality is asserted.
    Asserted,
    /// Only report the gap.
    Probe,
}

pub fn run_particle_on_shield_path_independence(
    traj_a: &ChargeTrajectory,
    traj_b: &ChargeTrajectory,
    shield_loop: &Circuit,
    claim: SymmetryClaim,
    cfg: &QuadratureConfig,
    tol: &Tolerances,
) -> Result<ScenarioResult> {
    let a = phase_apparatus_side(traj_a, shield_loop, cfg)?;
    let b = phase_apparatus_side(traj_b, shield_loop, cfg)?;
    let gap = a.radians() - b.radians();
    let scale = a.radians().abs().max(b.radians().abs());
    let result = ScenarioResult::assess(
        NAME,
        "the particle acting on the induced shield current gives the same phase on both paths",
        vec![
            LabeledPhase::new("path_a:particle_on_shield", a.relabel("apparatus-side"), None),
            LabeledPhase::new("path_b:particle_on_shield", b.relabel("apparatus-side"), None),
            LabeledPhase::new("difference", PhaseValue::single("a - b", gap), Some(0.0)),
        ],
        gap,
        0.0,
        tol.path_relative * scale,
        Vec::new(),
    );
    Ok(match claim {
        SymmetryClaim::Asserted => result,
        SymmetryClaim::Probe => result.unasserted().with_note(format!(
            "relative gap {:.3e}",
            crate::phase::relative_gap(a.radians(), b.radians())
        )),
    })
}
