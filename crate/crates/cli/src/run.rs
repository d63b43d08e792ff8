//! Builds engine inputs from a [`Config`] and runs the scenarios in order.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use abphase_core::constants::{ELEMENTARY_CHARGE, HBAR, MU0};
use abphase_core::phase::{reciprocity_check, QuadratureConfig};
use abphase_core::scenarios::presets::{electrostatic_arms, random_transit, shield_paths};
use abphase_core::scenarios::{
    run_electrostatic_ab, run_magnetic_ab, run_neutron_scalar, run_particle_on_shield_path_independence, Check,
    LabeledPhase, MagneticAbSetup, NeutronSetup, ScenarioResult, Tolerances,
};
use abphase_core::sources::{EquivalentLoopCurrent, Polyline, ShieldSpec, SolenoidSpec};
use abphase_core::{PhaseError, PhaseValue, Vec3};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{
    Config, ElectrostaticConfig, MagneticConfig, NeutronConfig, ReciprocityConfig, ScenarioConfig, ShieldPathConfig,
};
use crate::report::Report;

/// An engine error, tagged with the scenario that raised it.
#[derive(Debug, thiserror::Error)]
#[error("scenario {index} ({kind}): {source}")]
pub struct RunError {
    pub index: usize,
    pub kind: &'static str,
    #[source]
    pub source: PhaseError,
}

/// A report together with per-scenario wall-clock times.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Report,
    pub timings: Vec<Duration>,
}

pub fn run(config: &Config) -> Result<Outcome, RunError> {
    let mut results = Vec::with_capacity(config.scenarios.len());
    let mut timings = Vec::with_capacity(config.scenarios.len());
    for (index, scenario) in config.scenarios.iter().enumerate() {
        let start = Instant::now();
        let result = run_scenario(scenario, &config.quadrature, &config.tolerances).map_err(|source| RunError {
            index,
            kind: scenario.kind(),
            source,
        })?;
        timings.push(start.elapsed());
        results.push(result);
    }
    Ok(Outcome {
        report: Report::new(config, &results),
        timings,
    })
}

pub fn run_scenario(
    scenario: &ScenarioConfig,
    cfg: &QuadratureConfig,
    tol: &Tolerances,
) -> abphase_core::Result<ScenarioResult> {
    match scenario {
        ScenarioConfig::ElectrostaticAb(c) => electrostatic(c),
        ScenarioConfig::NeutronScalar(c) => run_neutron_scalar(&neutron_setup(c)?, cfg, tol),
        ScenarioConfig::MagneticAb(c) => run_magnetic_ab(&magnetic_setup(c)?, cfg, tol),
        ScenarioConfig::ShieldPathIndependence(c) => shield_path(c, cfg, tol),
        ScenarioConfig::Reciprocity(c) => reciprocity(c, cfg),
    }
}

fn electrostatic(c: &ElectrostaticConfig) -> abphase_core::Result<ScenarioResult> {
    let (a, b) = electrostatic_arms(c.volts_a, c.volts_b, c.duration, c.samples)?;
    run_electrostatic_ab(&a, &b)
}

pub fn neutron_setup(c: &NeutronConfig) -> abphase_core::Result<NeutronSetup> {
    let sol = SolenoidSpec::infinite(Vec3::ZERO, Vec3::Z, c.radius, c.turns_per_meter, c.current)?;
    let dwell = c
        .dwell
        .unwrap_or_else(|| HBAR / (c.mu.abs() * MU0 * c.turns_per_meter * c.current.abs()));
    let mut setup = NeutronSetup::new(c.mu, sol, dwell, c.arm);
    setup.segments_per_turn = c.segments_per_turn;
    setup.truncation_radii = c.truncation_radii;
    Ok(setup)
}

pub fn magnetic_setup(c: &MagneticConfig) -> abphase_core::Result<MagneticAbSetup> {
    let flux = c.flux.unwrap_or(2.0 * PI * HBAR / (2.0 * ELEMENTARY_CHARGE));
    let current = flux / (MU0 * c.turns_per_meter * PI * c.radius * c.radius);
    let solenoid = SolenoidSpec::infinite(Vec3::ZERO, Vec3::Z, c.radius, c.turns_per_meter, current)?;
    let loop_radius = c.loop_radius.unwrap_or(3.0 * c.radius);
    let path = Polyline::regular_polygon(Vec3::ZERO, Vec3::Z, loop_radius, c.loop_segments)?;
    let equivalent_loop = EquivalentLoopCurrent::for_charge(path, ELEMENTARY_CHARGE, c.duration)?;
    let shield_radius = c.shield_radius.unwrap_or(2.0 * c.radius);
    let surface = Polyline::regular_polygon(Vec3::ZERO, Vec3::Z, shield_radius, c.shield_segments)?;
    let shield = ShieldSpec::new(surface, c.critical_temperature, c.shield)?;
    Ok(MagneticAbSetup {
        solenoid,
        equivalent_loop,
        shield,
        expected: c.expected,
    })
}

fn shield_path(c: &ShieldPathConfig, cfg: &QuadratureConfig, tol: &Tolerances) -> abphase_core::Result<ScenarioResult> {
    let [x, y, z] = c.loop_offset;
    let (a, b, circuit) = shield_paths(Vec3::new(x, y, z))?;
    run_particle_on_shield_path_independence(&a, &b, &circuit, c.claim, cfg, tol)
}

/// Each configuration is a random loop and electron transit; both sides of
/// the mutual phase must agree within 10× the combined quadrature tolerance.
fn reciprocity(c: &ReciprocityConfig, cfg: &QuadratureConfig) -> abphase_core::Result<ScenarioResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
    let mut uniform = || rng.random::<f64>();
    let mut phases = Vec::with_capacity(2 * c.count);
    let mut checks = Vec::with_capacity(c.count);
    let mut worst: Option<(f64, f64, f64)> = None;
    for i in 0..c.count {
        let (traj, circuit) = random_transit(&mut uniform)?;
        let r = reciprocity_check(&traj, &circuit, cfg)?;
        let (a, p) = (r.apparatus.radians(), r.particle.radians());
        let allowed = r.bound * a.abs().max(p.abs());
        checks.push(Check::new(format!("config_{i:03} sides agree"), p, a, allowed));
        if worst.is_none_or(|(g, _, _)| r.relative_gap > g) {
            worst = Some((r.relative_gap, a - p, allowed));
        }
        phases.push(LabeledPhase::new(
            format!("config_{i:03}:apparatus_side"),
            r.apparatus,
            None,
        ));
        phases.push(LabeledPhase::new(
            format!("config_{i:03}:particle_side"),
            r.particle,
            Some(a),
        ));
    }
    let (gap, difference, allowed) = worst.unwrap_or((0.0, 0.0, 0.0));
    phases.push(LabeledPhase::new(
        "worst:apparatus_minus_particle",
        PhaseValue::single("apparatus - particle", difference),
        Some(0.0),
    ));
    Ok(ScenarioResult::assess(
        "reciprocity",
        "the particle-side and apparatus-side forms of the mutual phase are equal",
        phases,
        difference,
        0.0,
        allowed,
        checks,
    )
    .with_note(format!("seed {}, {} configurations", c.seed, c.count))
    .with_note(format!("largest relative gap {gap:.3e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use abphase_core::scenarios::{presets, Verdict};
    use abphase_core::sources::ShieldMode;

    #[test]
    fn suite_config_matches_core_presets() {
        let cfg = QuadratureConfig::default();
        let tol = Tolerances::default();
        let out = run(&Config::reproduction_suite()).unwrap();
        let core = presets::reproduction_suite(&cfg, &tol).unwrap();
        assert_eq!(out.report, Report::new(&Config::reproduction_suite(), &core));
    }

    #[test]
    fn shieldless_setup_asserting_zero_is_violated() {
        let c = MagneticConfig {
            shield: ShieldMode::Off,
            expected: Some(0.0),
            ..MagneticConfig::default()
        };
        let r = run_scenario(
            &ScenarioConfig::MagneticAb(c),
            &QuadratureConfig::default(),
            &Tolerances::default(),
        );
        assert_eq!(r.unwrap().verdict, Verdict::Violated);
    }

    #[test]
    fn reciprocity_is_seeded() {
        let c = ReciprocityConfig { count: 4, seed: 11 };
        let cfg = QuadratureConfig::default();
        let a = reciprocity(&c, &cfg).unwrap();
        let b = reciprocity(&c, &cfg).unwrap();
        let d = reciprocity(&ReciprocityConfig { seed: 12, ..c }, &cfg).unwrap();
        assert_eq!(a, b);
        assert_ne!(a.phases[0].radians(), d.phases[0].radians());
        assert_eq!(a.verdict, Verdict::Reproduced, "{a:#?}");
        assert_eq!(a.phases.len(), 9);
    }

    #[test]
    fn loop_inside_the_winding_is_an_engine_error() {
        let c = MagneticConfig {
            loop_radius: Some(0.5e-6),
            ..MagneticConfig::default()
        };
        let config = Config {
            scenarios: vec![ScenarioConfig::MagneticAb(c)],
            ..Config::reproduction_suite()
        };
        let err = run(&config).unwrap_err();
        assert_eq!(err.index, 0);
        assert_eq!(err.kind, "magnetic_ab");
    }
}
