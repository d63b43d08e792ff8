//! The neutron "scalar" phase, computed as a magnetic effect of the
//! neutron's dipole potential on the solenoid's conduction charges.

use serde::{Deserialize, Serialize};

use crate::constants::HBAR;
use crate::error::{require_finite, require_positive, PhaseError, Result};
use crate::phase::apparatus::phase_apparatus_side;
use crate::phase::neutron::phase_neutron_integral;
use crate::phase::quadrature::QuadratureConfig;
use crate::phase_value::PhaseValue;
use crate::scenarios::{Check, LabeledPhase, ScenarioResult, Tolerances};
use crate::sources::dipole::{DipoleSource, DipoleTrajectory};
use crate::sources::solenoid::{SolenoidSpec, DEFAULT_SEGMENTS_PER_TURN};

pub const NAME: &str = "neutron_scalar";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Arm {
    /// The neutron rests on the solenoid axis while the current pulse runs.
    Through,
    /// The neutron rests beside the solenoid.
    Outside,
}

/// The loop-discretized route meets its tolerance once turns are spaced
/// below about R/3, i.e. turns_per_meter · radius ≥ 3.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NeutronSetup {
    /// Magnetic moment along the solenoid axis (sign gives orientation), A·m².
    pub mu: f64,
    pub solenoid: SolenoidSpec,
    /// Time the current is on while the neutron is inside the apparatus, s.
    pub dwell: f64,
    pub arm: Arm,
    pub segments_per_turn: usize,
    /// Half-length of the discretized stand-in for the infinite solenoid, in radii.
    pub truncation_radii: f64,
    /// Distance of the outside arm from the axis, in radii.
    pub outside_offset_radii: f64,
}

impl NeutronSetup {
    pub fn new(mu: f64, solenoid: SolenoidSpec, dwell: f64, arm: Arm) -> Self {
        Self {
            mu,
            solenoid,
            dwell,
            arm,
            segments_per_turn: DEFAULT_SEGMENTS_PER_TURN,
            truncation_radii: 100.0,
            outside_offset_radii: 3.0,
        }
    }
}

/// Phase on one arm computed three ways: the naive energy form μBΔt/ħ, the
/// θ-substituted dipole-on-windings integral, and a sum over loop-discretized
/// turns. The last is checked at the looser discretization tolerance.
pub fn run_neutron_scalar(setup: &NeutronSetup, cfg: &QuadratureConfig, tol: &Tolerances) -> Result<ScenarioResult> {
    let sol = &setup.solenoid;
    if !sol.is_infinite() {
        return Err(PhaseError::UnsupportedGeometry(
            "neutron scenario idealizes an infinite solenoid".into(),
        ));
    }
    require_finite("mu", setup.mu)?;
    require_positive("dwell", setup.dwell)?;
    require_positive("truncation_radii", setup.truncation_radii)?;
    require_positive("outside_offset_radii", setup.outside_offset_radii)?;

    let windings = sol
        .truncated(setup.truncation_radii * sol.radius)?
        .windings(setup.segments_per_turn)?;
    let moment = sol.axis_direction * setup.mu;

    match setup.arm {
        Arm::Through => {
            let energy_form = setup.mu * sol.interior_field() * setup.dwell / HBAR;
            let integral = phase_neutron_integral(setup.mu, sol, setup.dwell, cfg)?;
            let neutron = DipoleTrajectory::resting(DipoleSource::new(sol.axis_point, moment)?, setup.dwell)?;
            let discretized = phase_apparatus_side(&neutron, &windings, cfg)?;
            let checks = vec![Check::new(
                "loop-discretized windings vs energy form",
                discretized.radians(),
                energy_form,
                tol.discretized_relative * energy_form.abs(),
            )];
            let total = integral.radians();
            Ok(ScenarioResult::assess(
                NAME,
                "the phase μBΔt/ħ arises from the neutron's dipole potential acting on the solenoid current (magnetic, apparatus-side)",
                vec![
                    LabeledPhase::new("energy_form", PhaseValue::single("μBΔt/ħ", energy_form), Some(energy_form)),
                    LabeledPhase::new("dipole_on_windings_integral", integral, Some(energy_form)),
                    LabeledPhase::new("dipole_on_windings_discretized", discretized.relabel("apparatus-side:loops"), Some(energy_form)),
                ],
                total,
                energy_form,
                tol.relative * energy_form.abs(),
                checks,
            )
            .with_note("mechanism: magnetic (apparatus-side)"))
        }
        Arm::Outside => {
            let offset = sol.axis_direction.any_perpendicular() * (setup.outside_offset_radii * sol.radius);
            let neutron = DipoleTrajectory::resting(DipoleSource::new(sol.axis_point + offset, moment)?, setup.dwell)?;
            let leakage = phase_apparatus_side(&neutron, &windings, cfg)?;
            Ok(ScenarioResult::assess(
                NAME,
                "no field and no coupling outside an infinite solenoid",
                vec![
                    LabeledPhase::new("energy_form", PhaseValue::zero("μBΔt/ħ"), Some(0.0)),
                    LabeledPhase::new(
                        "dipole_on_windings_integral",
                        PhaseValue::zero("apparatus-side"),
                        Some(0.0),
                    ),
                    LabeledPhase::new("finite_length_leakage", leakage.relabel("apparatus-side:loops"), None),
                ],
                0.0,
                0.0,
                tol.zero_absolute,
                Vec::new(),
            )
            .with_note("finite-length leakage is reported, not asserted"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::MU0;
    use crate::scenarios::Verdict;
    use crate::vec3::Vec3;

    fn setup(mu: f64) -> NeutronSetup {
        let sol = SolenoidSpec::infinite(Vec3::ZERO, Vec3::Z, 2e-3, 5000.0, 0.8).unwrap();
        let dwell = HBAR / (mu.abs() * MU0 * 5000.0 * 0.8);
        NeutronSetup::new(mu, sol, dwell, Arm::Through)
    }

    #[test]
    fn three_routes_give_one_radian() {
        let r = run_neutron_scalar(&setup(9.66e-27), &QuadratureConfig::default(), &Tolerances::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Reproduced, "{r:#?}");
        for p in &r.phases {
            assert!((p.radians() - 1.0).abs() < 1e-3, "{}: {}", p.label, p.radians());
        }
    }

    #[test]
    fn flipping_moment_flips_phase() {
        let up = run_neutron_scalar(&setup(9.66e-27), &QuadratureConfig::default(), &Tolerances::default()).unwrap();
        let down = run_neutron_scalar(&setup(-9.66e-27), &QuadratureConfig::default(), &Tolerances::default()).unwrap();
        for (a, b) in up.phases.iter().zip(&down.phases) {
            assert!((a.radians() + b.radians()).abs() < 1e-12, "{}", a.label);
        }
        assert_eq!(down.verdict, Verdict::Reproduced);
    }

    #[test]
    fn outside_arm_is_idealized_zero() {
        let mut s = setup(9.66e-27);
        s.arm = Arm::Outside;
        let r = run_neutron_scalar(&s, &QuadratureConfig::default(), &Tolerances::default()).unwrap();
        assert_eq!(r.total_difference, 0.0);
        assert_eq!(r.verdict, Verdict::Reproduced);
        assert!(r.phase("finite_length_leakage").unwrap().radians().abs() < 1e-2);
    }
}
