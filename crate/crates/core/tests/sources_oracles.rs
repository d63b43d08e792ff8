use std::f64::consts::PI;

use abphase_core::phase::linkage::{loop_flux, winding_flux};
use abphase_core::phase::QuadratureConfig;
use abphase_core::sources::{solenoid_a_analytic, solenoid_a_loops, Polyline, SolenoidSpec, DEFAULT_GUARD};
use abphase_core::Vec3;

fn solenoid() -> SolenoidSpec {
    SolenoidSpec::infinite(Vec3::ZERO, Vec3::Z, 1e-2, 1000.0, 3.0).unwrap()
}

/// Independent oracle: composite trapezoid of A·t around a circle about the axis.
fn circle_integral(sol: &SolenoidSpec, rho: f64, z: f64, n: usize) -> f64 {
    (0..n)
        .map(|k| {
            let phi = 2.0 * PI * k as f64 / n as f64;
            let (s, c) = phi.sin_cos();
            let p = Vec3::new(rho * c, rho * s, z);
            let t = Vec3::new(-s, c, 0.0);
            solenoid_a_analytic(sol, p).unwrap().dot(t) * 2.0 * PI * rho / n as f64
        })
        .sum()
}

#[test]
fn circulation_outside_equals_enclosed_flux() {
    let sol = solenoid();
    for rho in [1.5e-2, 3e-2, 1.0] {
        let c = circle_integral(&sol, rho, 0.4, 4096);
        assert!((c - sol.flux()).abs() < 1e-12 * sol.flux(), "rho={rho}");
    }
}

#[test]
fn closed_polylines_not_linking_see_no_flux() {
    let sol = solenoid();
    let cfg = QuadratureConfig::default();
    for (center, axis) in [
        (Vec3::new(0.05, 0.0, 0.0), Vec3::Z),
        (Vec3::new(0.0, 0.04, 0.1), Vec3::new(1.0, 1.0, 0.3)),
        (Vec3::new(0.0, 0.0, 0.2), Vec3::X),
    ] {
        let l = Polyline::regular_polygon(center, axis, 0.02, 40).unwrap();
        let f = loop_flux(&sol, &l, &cfg).unwrap();
        assert!(f.value.abs() < 1e-8 * sol.flux(), "{center:?}: {}", f.value);
    }
}

#[test]
fn induced_loop_radius_does_not_change_coupling() {
    let sol = solenoid();
    let cfg = QuadratureConfig::default();
    let phases: Vec<f64> = [1.2e-2, 2e-2, 7e-2]
        .iter()
        .map(|r| {
            let l = Polyline::regular_polygon(Vec3::new(0.0, 0.0, 0.01), Vec3::Z, *r, 36).unwrap();
            loop_flux(&sol, &l, &cfg).unwrap().value
        })
        .collect();
    for p in &phases {
        assert!((p - sol.flux()).abs() < 1e-10 * sol.flux());
    }
}

#[test]
fn winding_side_is_radius_independent_too() {
    let sol = solenoid();
    let cfg = QuadratureConfig::default();
    let per_amp = sol.flux() / sol.current;
    for r in [1.5e-2, 3e-2, 6e-2] {
        let l = Polyline::regular_polygon(Vec3::ZERO, Vec3::Z, r, 24).unwrap();
        let w = winding_flux(&sol, &l, 1.0, &cfg).unwrap();
        assert!(
            (w.value - per_amp).abs() < 1e-8 * per_amp,
            "r={r}: {} vs {per_amp}",
            w.value
        );
    }
}

#[test]
fn finite_solenoid_error_shrinks_with_length() {
    let sol = solenoid();
    let point = Vec3::new(2.0 * sol.radius, 0.0, 0.0);
    let exact = solenoid_a_analytic(&sol, point).unwrap();
    let errors: Vec<f64> = [5.0, 10.0, 20.0]
        .iter()
        .map(|k| {
            let f = sol.truncated(k * sol.radius).unwrap();
            (solenoid_a_loops(&f, point, 128, DEFAULT_GUARD).unwrap() - exact).norm() / exact.norm()
        })
        .collect();
    assert!(errors.windows(2).all(|w| w[1] < w[0]), "{errors:?}");
}
