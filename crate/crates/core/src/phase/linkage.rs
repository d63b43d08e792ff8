//! Flux linkage between an infinite solenoid and a closed loop, computed from
//! both ends:
//!
//! * loop side: ∮ A_solenoid·dl along the loop, using the closed form;
//! * winding side: n ∫ dz ∮ A_loop·ds over every turn, with the loop's
//!   potential from the exact straight-filament formula.
//!
//! For a loop linking the solenoid once both equal μ0 n πR² per ampere.

use std::f64::consts::PI;

use crate::error::{PhaseError, Result};
use crate::phase::particle::loop_line_integral;
use crate::phase::quadrature::{integrate, Integral, QuadratureConfig};
use crate::sources::solenoid::{solenoid_a_analytic, SolenoidSpec};
use crate::sources::wire::Polyline;

const RING_MIN_POINTS: usize = 32;
const RING_MAX_POINTS: usize = 1 << 14;
const RING_TOLERANCE: f64 = 1e-14;

/// ∮ A_solenoid·dl around `path` (Wb).
pub fn loop_flux(sol: &SolenoidSpec, path: &Polyline, cfg: &QuadratureConfig) -> Result<Integral> {
    loop_line_integral(path, |r| solenoid_a_analytic(sol, r), cfg)
}

/// Σ over the turns of ∮ A_loop·ds, for `loop_current` in `path` (Wb).
///
/// The loop must stay outside the winding cylinder.
pub fn winding_flux(
    sol: &SolenoidSpec,
    path: &Polyline,
    loop_current: f64,
    cfg: &QuadratureConfig,
) -> Result<Integral> {
    if !sol.is_infinite() {
        return Err(PhaseError::UnsupportedGeometry(
            "winding-side linkage integrates an infinite solenoid".into(),
        ));
    }
    let guard = cfg.singularity_guard.max(0.0);
    let mut z_sum = 0.0;
    let mut reach: f64 = 0.0;
    for (a, b) in path.segments() {
        let (za, pa) = sol.decompose(a);
        let (_, pb) = sol.decompose(b);
        z_sum += za;
        reach = reach.max(pa.norm()).max(pb.norm());
        // Closest approach of this side to the axis, in the transverse plane.
        let d = pb - pa;
        let s = if d.norm_squared() > 0.0 {
            (-pa.dot(d) / d.norm_squared()).clamp(0.0, 1.0)
        } else {
            0.0
        };
        let closest = (pa + d * s).norm();
        if closest <= sol.radius + guard {
            return Err(PhaseError::UnsupportedGeometry(format!(
                "loop passes {closest:e} m from the axis, inside the winding radius {:e} m",
                sol.radius
            )));
        }
    }
    let z_center = z_sum / (path.vertices().len() - 1) as f64;
    let scale = reach.max(sol.radius);
    let axis = sol.axis_direction;
    let e1 = axis.any_perpendicular();
    let e2 = axis.cross(e1);
    let radius = sol.radius;

    let ring = |z: f64, floor: f64| -> Result<f64> {
        let center = sol.axis_point + axis * z;
        let eval = |m: usize, offset: f64| -> Result<(f64, f64)> {
            let mut sum = 0.0;
            let mut abs = 0.0;
            for j in 0..m {
                let phi = 2.0 * PI * (j as f64 + offset) / m as f64;
                let (s, c) = phi.sin_cos();
                let p = center + (e1 * c + e2 * s) * radius;
                let tangent = e2 * c - e1 * s;
                let v = path.vector_potential(loop_current, p, guard)?.dot(tangent);
                sum += v;
                abs += v.abs();
            }
            let w = 2.0 * PI * radius / m as f64;
            Ok((sum * w, abs * w))
        };
        // Periodic trapezoid; doubling reuses the previous nodes via a half-step offset.
        let mut m = RING_MIN_POINTS;
        let (mut estimate, mut l1) = eval(m, 0.0)?;
        loop {
            let (shifted, shifted_abs) = eval(m, 0.5)?;
            let refined = 0.5 * (estimate + shifted);
            let refined_l1 = 0.5 * (l1 + shifted_abs);
            m *= 2;
            if (refined - estimate).abs() <= RING_TOLERANCE * refined_l1.max(floor) {
                return Ok(refined);
            }
            if m >= RING_MAX_POINTS {
                return Err(PhaseError::NonConvergence {
                    achieved: (refined - estimate).abs(),
                    requested: RING_TOLERANCE * refined_l1,
                    subdivisions: m,
                });
            }
            estimate = refined;
            l1 = refined_l1;
        }
    };

    // Far from the loop the ring value is a small remainder of cancelling
    // segment terms; judge its convergence against the near-field magnitude.
    let floor = ring(z_center, 0.0)?.abs();
    let n = sol.turns_per_meter;
    integrate(
        |theta| {
            let s = theta.sin();
            let z = z_center + scale * theta.cos() / s;
            Ok(n * ring(z, floor)? * scale / (s * s))
        },
        &[0.0, 0.25 * PI, 0.5 * PI, 0.75 * PI, PI],
        cfg,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vec3::Vec3;

    fn sol() -> SolenoidSpec {
        SolenoidSpec::infinite(Vec3::ZERO, Vec3::Z, 1e-3, 2000.0, 0.5).unwrap()
    }

    #[test]
    fn loop_flux_equals_enclosed_flux() {
        let s = sol();
        let ring = Polyline::regular_polygon(Vec3::new(0.0, 0.0, 0.3), Vec3::Z, 3e-3, 12).unwrap();
        let f = loop_flux(&s, &ring, &QuadratureConfig::default()).unwrap();
        assert!((f.value - s.flux()).abs() < 1e-12 * s.flux());
    }

    #[test]
    fn winding_flux_equals_mutual_inductance() {
        let s = sol();
        let ring = Polyline::regular_polygon(Vec3::new(0.0, 0.0, 0.01), Vec3::Z, 2.5e-3, 24).unwrap();
        let cfg = QuadratureConfig::default();
        // Per ampere of solenoid current, the loop side gives μ0 n πR².
        let expected = s.flux() / s.current;
        let w = winding_flux(&s, &ring, 1.0, &cfg).unwrap();
        assert!(
            (w.value - expected).abs() < 1e-9 * expected,
            "{} vs {}",
            w.value,
            expected
        );
    }

    #[test]
    fn winding_flux_rejects_loop_inside_cylinder() {
        let s = sol();
        let ring = Polyline::regular_polygon(Vec3::ZERO, Vec3::Z, 0.5e-3, 12).unwrap();
        assert!(winding_flux(&s, &ring, 1.0, &QuadratureConfig::default()).is_err());
    }
}
