//! Electrostatic AB: energy phases of particle and source cancel on each arm.

use crate::error::{PhaseError, Result};
use crate::phase::energy::{phase_energy, EnergyProfile, Side};
use crate::phase_value::PhaseValue;
use crate::scenarios::{LabeledPhase, ScenarioResult};

pub const NAME: &str = "electrostatic_ab";

/// Compare two interferometer arms. The particle-only difference is the
/// naive prediction; the full-system difference includes the source's
/// opposite energy change and is exactly zero.
pub fn run_electrostatic_ab(arm_a: &EnergyProfile, arm_b: &EnergyProfile) -> Result<ScenarioResult> {
    if arm_a.start_time() != arm_b.start_time() || arm_a.end_time() != arm_b.end_time() {
        return Err(PhaseError::MismatchedGrids(format!(
            "arm windows differ: [{}, {}] vs [{}, {}]",
            arm_a.start_time(),
            arm_a.end_time(),
            arm_b.start_time(),
            arm_b.end_time()
        )));
    }
    let pa = phase_energy(arm_a, Side::Particle)?;
    let sa = phase_energy(arm_a, Side::Source)?;
    let pb = phase_energy(arm_b, Side::Particle)?;
    let sb = phase_energy(arm_b, Side::Source)?;
    let full_a = pa.radians() + sa.radians();
    let full_b = pb.radians() + sb.radians();
    let full = full_a - full_b;
    let naive = pa.radians() - pb.radians();
    let phases = vec![
        LabeledPhase::new("arm_a:particle", pa.clone(), None),
        LabeledPhase::new("arm_a:source", sa.clone(), Some(0.0 - pa.radians())),
        LabeledPhase::new("arm_b:particle", pb.clone(), None),
        LabeledPhase::new("arm_b:source", sb.clone(), Some(0.0 - pb.radians())),
        LabeledPhase::new(
            "particle_only_difference",
            PhaseValue::single("particle-only", naive),
            None,
        ),
        LabeledPhase::new(
            "full_system_difference",
            PhaseValue::from_parts([("arm_a", full_a), ("arm_b", -full_b)]),
            Some(0.0),
        ),
    ];
    Ok(ScenarioResult::assess(
        NAME,
        "energy phases of particle and source cancel on every arm, so the full-system difference is exactly zero",
        phases,
        full,
        0.0,
        0.0,
        Vec::new(),
    )
    .with_note(format!("naive particle-only difference: {naive:.12e} rad")))
}
