//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::f64::consts::PI;
use std::panic::{self, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use abphase_cli::config::{seed_from_env, MagneticConfig, NeutronConfig, ShieldPathConfig};
use abphase_cli::run::{magnetic_setup, run_scenario};
use abphase_cli::ScenarioConfig;
use abphase_core::constants::{ELEMENTARY_CHARGE, HBAR, MU0};
use abphase_core::phase::{
    phase_energy, phase_neutron_integral, reciprocity_check, EnergyProfile, QuadratureConfig, Side,
};
use abphase_core::scenarios::presets::random_transit;
use abphase_core::scenarios::wang::boundary_duration;
use abphase_core::scenarios::{
    run_electrostatic_ab, run_magnetic_ab, run_wang_check, ScenarioResult, Tolerances, Verdict,
};
use abphase_core::sources::{solenoid_a_analytic, solenoid_a_loops, ShieldMode, SolenoidSpec, DEFAULT_GUARD};
use abphase_core::topology::linking_with_axis;
use abphase_core::Vec3;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

/// ħ/(k · 9.2 K · 1 ps), evaluated in 50-digit arithmetic.
#[allow(clippy::excessive_precision)]
const WANG_1PS_ORACLE: f64 = 0.830_242_671_475_831_136_377_671_408_282_563_521_56;

fn ensure(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn rel(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    (lo.ln() + (hi.ln() - lo.ln()) * rng.random::<f64>()).exp()
}

fn cfg() -> QuadratureConfig {
    QuadratureConfig::default()
}

fn tol() -> Tolerances {
    Tolerances::default()
}

fn phase(r: &ScenarioResult, label: &str) -> f64 {
    r.phase(label)
        .unwrap_or_else(|| panic!("{} has no phase {label}", r.name))
        .radians()
}

struct RandomNeutron {
    mu: f64,
    sol: SolenoidSpec,
    dwell: f64,
}

fn random_neutrons(seed: u64) -> Vec<RandomNeutron> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..20)
        .map(|_| {
            let mu = log_uniform(&mut rng, 1e-27, 1e-24);
            let radius = log_uniform(&mut rng, 1e-4, 1e-1);
            let n = log_uniform(&mut rng, 1e2, 1e5);
            let current = log_uniform(&mut rng, 1e-3, 1e1);
            let dwell = log_uniform(&mut rng, 1e-10, 1e-5);
            let sol = SolenoidSpec::infinite(Vec3::ZERO, Vec3::Z, radius, n, current).unwrap();
            RandomNeutron { mu, sol, dwell }
        })
        .collect()
}

fn c1_neutron_integral() -> Outcome {
    let cases = random_neutrons(seed_from_env().unwrap());
    let start = Instant::now();
    let mut worst = 0.0f64;
    for c in &cases {
        let numeric = phase_neutron_integral(c.mu, &c.sol, c.dwell, &cfg()).unwrap().radians();
        let closed = c.mu * MU0 * c.sol.turns_per_meter * c.sol.current * c.dwell / HBAR;
        worst = worst.max(rel(numeric, closed));
    }
    let elapsed = start.elapsed();
    ensure(
        worst <= 1e-6 && elapsed < Duration::from_secs(1),
        format!(
            "20 sets, worst relative error {worst:.2e} (limit 1e-6), {:.3} s (limit 1 s)",
            elapsed.as_secs_f64()
        ),
    )
}

fn c2_apparatus_equals_energy_form() -> Outcome {
    let mut worst = 0.0f64;
    for c in random_neutrons(seed_from_env().unwrap().wrapping_add(1)) {
        let apparatus = phase_neutron_integral(c.mu, &c.sol, c.dwell, &cfg()).unwrap().radians();
        let energy_form = c.mu * c.sol.interior_field() * c.dwell / HBAR;
        worst = worst.max(rel(apparatus, energy_form));
    }
    let scenario = run_scenario(&ScenarioConfig::NeutronScalar(NeutronConfig::default()), &cfg(), &tol()).unwrap();
    let integral = phase(&scenario, "dipole_on_windings_integral");
    let energy = phase(&scenario, "energy_form");
    worst = worst.max(rel(integral, energy));
    ensure(
        worst <= 1e-6 && scenario.verdict == Verdict::Reproduced,
        format!(
            "worst relative gap {worst:.2e} over 21 sets (limit 1e-6); scenario {}",
            scenario.verdict.as_str()
        ),
    )
}

fn c3_reciprocity() -> Outcome {
    let seed = seed_from_env().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut uniform = || rng.random::<f64>();
    let start = Instant::now();
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let (traj, circuit) = random_transit(&mut uniform).unwrap();
        let r = reciprocity_check(&traj, &circuit, &cfg()).unwrap();
        let (a, p) = (r.apparatus.radians(), r.particle.radians());
        worst = worst.max((a - p).abs() / a.abs().max(p.abs()));
    }
    let elapsed = start.elapsed();
    ensure(
        worst <= 1e-8 && elapsed < Duration::from_secs(30),
        format!(
            "seed {seed}, 100 configs, worst relative gap {worst:.2e} (limit 1e-8), {:.2} s (limit 30 s)",
            elapsed.as_secs_f64()
        ),
    )
}

fn trapezoid(times: &[f64], values: &[f64]) -> f64 {
    times
        .windows(2)
        .zip(values.windows(2))
        .map(|(t, v)| 0.5 * (t[1] - t[0]) * (v[0] + v[1]))
        .sum()
}

fn random_profile(rng: &mut ChaCha8Rng, t_end: f64) -> (Vec<f64>, Vec<f64>) {
    let n = 2 + (rng.random::<f64>() * 60.0) as usize;
    let mut inner: Vec<f64> = (0..n - 2).map(|_| t_end * rng.random::<f64>()).collect();
    inner.sort_by(f64::total_cmp);
    inner.dedup();
    let mut times = vec![0.0];
    times.extend(inner.into_iter().filter(|t| *t > 0.0 && *t < t_end));
    times.push(t_end);
    let energies = times
        .iter()
        .map(|_| 1e-24 * (2.0 * rng.random::<f64>() - 1.0))
        .collect();
    (times, energies)
}

fn c4_electrostatic_cancellation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed_from_env().unwrap().wrapping_add(4));
    let mut nonzero_full = 0;
    let mut missed_naive = 0;
    let mut differing = 0;
    for k in 0..100 {
        let t_end = log_uniform(&mut rng, 1e-12, 1e-6);
        let (ta, ea) = random_profile(&mut rng, t_end);
        let (tb, eb) = if k % 10 == 0 {
            (ta.clone(), ea.clone())
        } else {
            random_profile(&mut rng, t_end)
        };
        let a = EnergyProfile::new(ta.clone(), ea.clone()).unwrap();
        let b = EnergyProfile::new(tb.clone(), eb.clone()).unwrap();
        let r = run_electrostatic_ab(&a, &b).unwrap();
        if r.total_difference != 0.0 || r.verdict != Verdict::Reproduced {
            nonzero_full += 1;
        }
        let naive = phase(&r, "particle_only_difference");
        let expected_naive =
            phase_energy(&a, Side::Particle).unwrap().radians() - phase_energy(&b, Side::Particle).unwrap().radians();
        if trapezoid(&ta, &ea) != trapezoid(&tb, &eb) {
            differing += 1;
            if naive == 0.0 || naive != expected_naive {
                missed_naive += 1;
            }
        }
    }
    ensure(
        nonzero_full == 0 && missed_naive == 0 && differing >= 90,
        format!(
            "100 pairs: {nonzero_full} nonzero full-system differences; {differing} pairs with differing ∫ΔE dt, {missed_naive} of them with zero naive difference"
        ),
    )
}

fn c5_unshielded() -> Outcome {
    let mut worst = 0.0f64;
    for flux in [1e-16, 3.3e-15, -7.1e-15, 2.0e-14] {
        let c = MagneticConfig {
            flux: Some(flux),
            ..MagneticConfig::default()
        };
        let r = run_magnetic_ab(&magnetic_setup(&c).unwrap(), &cfg(), &tol()).unwrap();
        let target = ELEMENTARY_CHARGE * flux / HBAR;
        worst = worst.max(rel(phase(&r, "solenoid_on_equivalent_loop"), target));
        worst = worst.max(rel(phase(&r, "equivalent_loop_on_solenoid"), target));
    }
    let r = run_magnetic_ab(&magnetic_setup(&MagneticConfig::default()).unwrap(), &cfg(), &tol()).unwrap();
    let pi_err = (r.total_difference - PI).abs();
    ensure(
        worst <= 1e-8 && pi_err <= 1e-10 && r.verdict == Verdict::Reproduced,
        format!("worst relative error vs eΦ/ħ {worst:.2e} (limit 1e-8); Φ = h/2e gives π with error {pi_err:.2e} rad (limit 1e-10)"),
    )
}

fn c6_shielded() -> Outcome {
    let c = MagneticConfig {
        shield: ShieldMode::Ideal,
        ..MagneticConfig::default()
    };
    let r = run_magnetic_ab(&magnetic_setup(&c).unwrap(), &cfg(), &tol()).unwrap();
    let forward = phase(&r, "total:solenoid_on_currents");
    let reverse = phase(&r, "total:currents_on_solenoid");
    let pairs = [
        ("solenoid_on_equivalent_loop", "equivalent_loop_on_solenoid"),
        ("solenoid_on_induced_shield", "induced_shield_on_solenoid"),
    ];
    let direction_gap = pairs
        .iter()
        .map(|(f, b)| rel(phase(&r, f), phase(&r, b)))
        .fold(0.0f64, f64::max);
    let scale = phase(&r, "solenoid_on_equivalent_loop").abs();
    let total_gap = (forward - reverse).abs() / scale;
    ensure(
        forward.abs() <= 1e-10 && reverse.abs() <= 1e-10 && direction_gap <= 1e-9 && total_gap <= 1e-9,
        format!(
            "|total| {:.2e} / {:.2e} rad by each direction (limit 1e-10); directions agree to {:.2e} per current, {total_gap:.2e} in total (limit 1e-9)",
            forward.abs(),
            reverse.abs(),
            direction_gap
        ),
    )
}

fn c7_loop_radius_independence() -> Outcome {
    let base = MagneticConfig {
        shield: ShieldMode::Ideal,
        ..MagneticConfig::default()
    };
    let mut forward = Vec::new();
    let mut reverse = Vec::new();
    let mut links = Vec::new();
    for factor in [1.5, 2.0, 2.5] {
        let c = MagneticConfig {
            shield_radius: Some(factor * base.radius),
            ..base.clone()
        };
        let setup = magnetic_setup(&c).unwrap();
        links.push(linking_with_axis(&setup.shield.surface_loop, Vec3::ZERO, Vec3::Z));
        let r = run_magnetic_ab(&setup, &cfg(), &tol()).unwrap();
        forward.push(phase(&r, "solenoid_on_induced_shield"));
        reverse.push(phase(&r, "induced_shield_on_solenoid"));
    }
    let spread = |v: &[f64]| v.iter().map(|x| rel(*x, v[0])).fold(0.0f64, f64::max);
    let (sf, sr) = (spread(&forward), spread(&reverse));
    let links_once = links.iter().all(|l| (l - 1.0).abs() < 0.1);
    ensure(
        links_once && sf <= 1e-8 && sr <= 1e-8,
        format!(
            "radii 1.5R, 2R, 2.5R link {links:.3?}; coupling spread {sf:.2e} / {sr:.2e} by each direction (limit 1e-8)"
        ),
    )
}

fn c8_shield_path_independence() -> Outcome {
    let r = run_scenario(
        &ScenarioConfig::ShieldPathIndependence(ShieldPathConfig::default()),
        &cfg(),
        &tol(),
    )
    .unwrap();
    let a = phase(&r, "path_a:particle_on_shield");
    let b = phase(&r, "path_b:particle_on_shield");
    let gap = rel(a, b);
    ensure(
        gap <= 1e-9 && a != 0.0 && r.verdict == Verdict::Reproduced,
        format!("path phases {a:.9e} and {b:.9e} rad, relative gap {gap:.2e} (limit 1e-9)"),
    )
}

fn c9_wang() -> Outcome {
    let tc = 9.2;
    let boundary = boundary_duration(tc);
    let mut flips = Vec::new();
    let mut last_ratio = f64::INFINITY;
    let mut monotone = true;
    let mut previous = None;
    for k in 0..1000 {
        let tau = boundary * (1.0 + (k as f64 - 500.0) / 1000.0);
        let w = run_wang_check(tau, tc).unwrap();
        monotone &= w.ratio < last_ratio;
        last_ratio = w.ratio;
        if previous.is_some_and(|p| p != w.shield_transparent) {
            flips.push(tau);
        }
        previous = Some(w.shield_transparent);
    }
    let regression = run_wang_check(1e-12, 9.2).unwrap().ratio;
    let reg_err = rel(regression, WANG_1PS_ORACLE);
    ensure(
        monotone && flips == [boundary] && reg_err <= 1e-12,
        format!(
            "1000-point sweep flips {} time(s), at τ = {:?} (boundary ħ/kT_c = {boundary:e} s); 1 ps ratio {regression:.17} vs oracle, relative error {reg_err:.1e} (limit 1e-12)",
            flips.len(),
            flips
        ),
    )
}

fn c10_discretization_convergence() -> Outcome {
    let sol = SolenoidSpec::infinite(Vec3::ZERO, Vec3::Z, 1e-2, 1000.0, 1.0).unwrap();
    let points = [
        Vec3::new(0.5 * sol.radius, 0.0, 0.0),
        Vec3::new(2.0 * sol.radius, 0.0, 0.0),
        Vec3::new(0.0, 3.0 * sol.radius, 0.2 * sol.radius),
    ];
    let mut errors = Vec::new();
    for k in [10.0, 20.0, 40.0, 80.0] {
        let finite = sol.truncated(k * sol.radius).unwrap();
        let err = points
            .iter()
            .map(|p| {
                let exact = solenoid_a_analytic(&sol, *p).unwrap();
                (solenoid_a_loops(&finite, *p, 256, DEFAULT_GUARD).unwrap() - exact).norm() / exact.norm()
            })
            .fold(0.0f64, f64::max);
        errors.push(err);
    }
    let decreasing = errors.windows(2).all(|w| w[1] <= 1.1 * w[0]);
    let improved = errors[3] < errors[0];
    ensure(
        decreasing && improved,
        format!(
            "max relative error at half_length/R = 10, 20, 40, 80: {}",
            errors.iter().map(|e| format!("{e:.3e}")).collect::<Vec<_>>().join(", ")
        ),
    )
}

fn c11_suite_cli() -> Outcome {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_abphase"))
        .arg("suite")
        .output()
        .map_err(|e| format!("cannot launch abphase: {e}"))?;
    let elapsed = start.elapsed();
    let stdout = String::from_utf8_lossy(&out.stdout);
    let reproduced = stdout.matches("[REPRODUCED]").count();
    ensure(
        out.status.code() == Some(0) && reproduced == 5 && elapsed < Duration::from_secs(60),
        format!(
            "exit {:?}, {reproduced} scenarios reproduced, {:.2} s (limit 60 s)",
            out.status.code(),
            elapsed.as_secs_f64()
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("neutron θ-integral equals μμ0nIΔt/ħ", c1_neutron_integral),
        ("apparatus-side phase equals μBΔt/ħ", c2_apparatus_equals_energy_form),
        ("reciprocity on random transits", c3_reciprocity),
        ("electrostatic full-system cancellation", c4_electrostatic_cancellation),
        ("magnetic AB unshielded", c5_unshielded),
        ("magnetic AB ideally shielded", c6_shielded),
        ("induced loop radius independence", c7_loop_radius_independence),
        ("particle-on-shield path independence", c8_shield_path_independence),
        ("Wang criterion boundary and regression", c9_wang),
        ("finite solenoid convergence", c10_discretization_convergence),
        ("abphase suite", c11_suite_cli),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
