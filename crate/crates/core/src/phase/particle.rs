//! Particle-side phases: the potential of the apparatus acting on the moving
//! charge, (q/ħ) ∫ A(r(t))·v(t) dt.

use crate::constants::HBAR;
use crate::error::Result;
use crate::phase::quadrature::{integrate, Integral, QuadratureConfig};
use crate::phase_value::PhaseValue;
use crate::sources::trajectory::ChargeTrajectory;
use crate::sources::wire::Polyline;
use crate::vec3::Vec3;

/// (q/ħ) ∫ A(r(t))·v(t) dt along the interpolated trajectory.
///
/// The phase carries the sign of the momentum coupling qA·Δr; with a
/// right-handed loop around positive flux it is positive.
pub fn phase_particle_side<F>(traj: &ChargeTrajectory, field: F, cfg: &QuadratureConfig) -> Result<PhaseValue>
where
    F: Fn(Vec3) -> Result<Vec3>,
{
    let integral = integrate(
        |t| {
            let (r, v) = traj.path.state_at(t);
            Ok(field(r)?.dot(v))
        },
        &traj.path.breakpoints(),
        cfg,
    )?;
    let scale = traj.charge / HBAR;
    Ok(PhaseValue::single("particle-side", integral.value * scale)
        .with_diagnostics(integral.error_estimate * scale.abs(), integral.panels))
}

/// ∮ A·dl along a closed polyline, each side integrated adaptively.
pub fn loop_line_integral<F>(path: &Polyline, field: F, cfg: &QuadratureConfig) -> Result<Integral>
where
    F: Fn(Vec3) -> Result<Vec3>,
{
    let mut total = Integral {
        value: 0.0,
        error_estimate: 0.0,
        l1_norm: 0.0,
        panels: 0,
    };
    for (a, b) in path.segments() {
        let d = b - a;
        if d.norm() == 0.0 {
            continue;
        }
        let side = integrate(|s| Ok(field(a + d * s)?.dot(d)), &[0.0, 1.0], cfg)?;
        total.value += side.value;
        total.error_estimate += side.error_estimate;
        total.l1_norm += side.l1_norm;
        total.panels += side.panels;
    }
    Ok(total)
}
