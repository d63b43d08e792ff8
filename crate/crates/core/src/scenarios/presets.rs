//! Default configurations for the reproduction suite, and a sampler for
//! randomized reciprocity configurations.

use std::f64::consts::PI;

use crate::constants::{ELEMENTARY_CHARGE, HBAR, MU0};
use crate::error::Result;
use crate::phase::energy::EnergyProfile;
use crate::phase::quadrature::QuadratureConfig;
use crate::scenarios::{
    run_electrostatic_ab, run_magnetic_ab, run_neutron_scalar, run_particle_on_shield_path_independence, Arm,
    MagneticAbSetup, NeutronSetup, ScenarioResult, SymmetryClaim, Tolerances,
};
use crate::sources::shield::{EquivalentLoopCurrent, ShieldMode, ShieldSpec};
use crate::sources::solenoid::SolenoidSpec;
use crate::sources::trajectory::{ChargeTrajectory, Trajectory};
use crate::sources::wire::{Circuit, Polyline};
use crate::vec3::Vec3;

/// Neutron magnetic moment magnitude, J/T.
pub const NEUTRON_MOMENT: f64 = 9.662_365_1e-27;
/// Niobium critical temperature, K.
pub const NIOBIUM_TC: f64 = 9.2;

/// Arm A holds the particle at potential `volts` between ramps; arm B stays grounded.
pub fn electrostatic(volts: f64, duration: f64) -> Result<(EnergyProfile, EnergyProfile)> {
    electrostatic_arms(volts, 0.0, duration, 101)
}

/// Each arm ramps up to its potential over the first tenth of the window,
/// holds, and ramps back down over the last tenth.
pub fn electrostatic_arms(
    volts_a: f64,
    volts_b: f64,
    duration: f64,
    samples: usize,
) -> Result<(EnergyProfile, EnergyProfile)> {
    let times: Vec<f64> = (0..samples)
        .map(|k| duration * k as f64 / (samples.max(2) - 1) as f64)
        .collect();
    let profile = |volts: f64| {
        let energy = times
            .iter()
            .map(|t| {
                let s = t / duration;
                let ramp = ((s - 0.1) / 0.1).clamp(0.0, 1.0) * ((0.9 - s) / 0.1).clamp(0.0, 1.0);
                ELEMENTARY_CHARGE * volts * ramp
            })
            .collect();
        EnergyProfile::new(times.clone(), energy)
    };
    Ok((profile(volts_a)?, profile(volts_b)?))
}

/// Neutron resting on the axis of a long solenoid, with the dwell chosen so
/// that μBΔt/ħ = 1.
pub fn neutron() -> Result<NeutronSetup> {
    let turns_per_meter = 2000.0;
    let current = 1.0;
    let sol = SolenoidSpec::infinite(Vec3::ZERO, Vec3::Z, 5e-3, turns_per_meter, current)?;
    let dwell = HBAR / (NEUTRON_MOMENT * MU0 * turns_per_meter * current);
    Ok(NeutronSetup::new(NEUTRON_MOMENT, sol, dwell, Arm::Through))
}

/// Micron-scale solenoid holding Φ = h/(2e), a 32-sided equivalent loop at
/// 3R, and a 48-sided shield loop at 2R.
pub fn magnetic_ab(mode: ShieldMode) -> Result<MagneticAbSetup> {
    let radius = 1e-6;
    let turns_per_meter = 1e5;
    let flux = 2.0 * PI * HBAR / (2.0 * ELEMENTARY_CHARGE);
    let current = flux / (MU0 * turns_per_meter * PI * radius * radius);
    let solenoid = SolenoidSpec::infinite(Vec3::ZERO, Vec3::Z, radius, turns_per_meter, current)?;
    let path = Polyline::regular_polygon(Vec3::ZERO, Vec3::Z, 3.0 * radius, 32)?;
    let equivalent_loop = EquivalentLoopCurrent::for_charge(path, ELEMENTARY_CHARGE, 1e-12)?;
    let surface = Polyline::regular_polygon(Vec3::ZERO, Vec3::Z, 2.0 * radius, 48)?;
    let shield = ShieldSpec::new(surface, NIOBIUM_TC, mode)?;
    Ok(MagneticAbSetup {
        solenoid,
        equivalent_loop,
        shield,
        expected: None,
    })
}

/// Two electron paths from (−L,0,0) to (L,0,0) that swing out to radius 2a
/// around the x axis while twisting a quarter turn about it; path B is path A
/// rotated by π about x. The shield loop (radius a) is centered on the x axis
/// at `loop_offset` and circulates about it, so for zero offset the pair is
/// symmetric.
pub fn shield_paths(loop_offset: Vec3) -> Result<(ChargeTrajectory, ChargeTrajectory, Circuit)> {
    let a = 1e-3;
    let half = 5.0 * a;
    let swing = 2.0 * a;
    let duration = 1e-9;
    let path = |flip: f64| {
        move |t: f64| {
            let s = t / duration;
            let (x, dx) = (-half + 2.0 * half * s, 2.0 * half / duration);
            let (rho, drho) = (swing * (PI * s).sin(), swing * PI * (PI * s).cos() / duration);
            let (psi, dpsi) = (0.25 * PI + 0.5 * PI * s, 0.5 * PI / duration);
            let (sp, cp) = psi.sin_cos();
            let pos = Vec3::new(x, flip * rho * cp, flip * rho * sp);
            let vel = Vec3::new(
                dx,
                flip * (drho * cp - rho * dpsi * sp),
                flip * (drho * sp + rho * dpsi * cp),
            );
            (pos, vel)
        }
    };
    let traj_a = ChargeTrajectory::new(ELEMENTARY_CHARGE, Trajectory::from_fn(0.0, duration, 201, path(1.0))?)?;
    let traj_b = ChargeTrajectory::new(ELEMENTARY_CHARGE, Trajectory::from_fn(0.0, duration, 201, path(-1.0))?)?;
    let shield = Polyline::regular_polygon(loop_offset, Vec3::X, a, 64)?;
    let circuit = Circuit::from_loop(&shield, -1.0)?;
    Ok((traj_a, traj_b, circuit))
}

/// A random polygonal loop and a straight electron transit that keeps at
/// least 1 mm from every element midpoint. `uniform` yields samples in [0, 1).
pub fn random_transit(uniform: &mut impl FnMut() -> f64) -> Result<(ChargeTrajectory, Circuit)> {
    let unit_vector = |u: &mut dyn FnMut() -> f64| {
        let z = 2.0 * u() - 1.0;
        let phi = 2.0 * PI * u();
        let r = (1.0 - z * z).sqrt();
        Vec3::new(r * phi.cos(), r * phi.sin(), z)
    };
    loop {
        let center = Vec3::new(uniform() - 0.5, uniform() - 0.5, uniform() - 0.5) * 0.2;
        let axis = unit_vector(uniform);
        let radius = 0.02 + 0.08 * uniform();
        let segments = 8 + (uniform() * 24.0) as usize;
        let current = 10.0 * uniform() - 5.0;
        let loop_path = Polyline::regular_polygon(center, axis, radius, segments)?;
        let circuit = Circuit::from_loop(&loop_path, current)?;

        let direction = unit_vector(uniform);
        let miss = direction.any_perpendicular() * (0.15 * uniform());
        let speed = 1e6;
        let duration = 1e-6;
        let start = center + miss - direction * (0.5 * speed * duration);
        let velocity = direction * speed;
        let clear = circuit.elements().iter().all(|e| {
            let rel = e.midpoint - start;
            let along = rel.dot(direction).clamp(0.0, speed * duration);
            (rel - direction * along).norm() > 1e-3
        });
        if clear {
            let path = Trajectory::straight(start, velocity, 0.0, duration, 2)?;
            return Ok((ChargeTrajectory::new(ELEMENTARY_CHARGE, path)?, circuit));
        }
    }
}

/// The five default scenarios, in report order.
pub fn reproduction_suite(cfg: &QuadratureConfig, tol: &Tolerances) -> Result<Vec<ScenarioResult>> {
    let (arm_a, arm_b) = electrostatic(1e-3, 2e-9)?;
    let (traj_a, traj_b, shield) = shield_paths(Vec3::ZERO)?;
    Ok(vec![
        run_electrostatic_ab(&arm_a, &arm_b)?,
        run_neutron_scalar(&neutron()?, cfg, tol)?,
        run_magnetic_ab(&magnetic_ab(ShieldMode::Off)?, cfg, tol)?,
        run_magnetic_ab(&magnetic_ab(ShieldMode::Ideal)?, cfg, tol)?,
        run_particle_on_shield_path_independence(&traj_a, &traj_b, &shield, SymmetryClaim::Asserted, cfg, tol)?,
    ])
}
