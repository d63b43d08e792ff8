//! Point kernels for quasistatic vector potentials.
//!
//! All kernels refuse to evaluate within `guard` of their singular set.

use crate::constants::MU0_OVER_4PI;
use crate::error::{PhaseError, Result};
use crate::vec3::Vec3;

/// Default distance below which a field evaluation is a singularity, m.
pub const DEFAULT_GUARD: f64 = 1e-9;

#[inline]
fn guarded_distance(displacement: Vec3, guard: f64) -> Result<f64> {
    let r = displacement.norm();
    if r <= guard || !r.is_finite() {
        Err(PhaseError::Singularity { distance: r, guard })
    } else {
        Ok(r)
    }
}

/// Vector potential of a point charge `q` with velocity `v`, evaluated at
/// `displacement` from the charge: `(μ0/4π) q v / r`.
pub fn moving_charge_a(q: f64, v: Vec3, displacement: Vec3) -> Result<Vec3> {
    moving_charge_a_guarded(q, v, displacement, DEFAULT_GUARD)
}

pub fn moving_charge_a_guarded(q: f64, v: Vec3, displacement: Vec3, guard: f64) -> Result<Vec3> {
    let r = guarded_distance(displacement, guard)?;
    Ok(v * (MU0_OVER_4PI * q / r))
}

/// Vector potential of a point dipole `moment` at `displacement` from it:
/// `(μ0/4π) m × r / r³`.
pub fn dipole_a(moment: Vec3, displacement: Vec3) -> Result<Vec3> {
    dipole_a_guarded(moment, displacement, DEFAULT_GUARD)
}

pub fn dipole_a_guarded(moment: Vec3, displacement: Vec3, guard: f64) -> Result<Vec3> {
    let r = guarded_distance(displacement, guard)?;
    Ok(moment.cross(displacement) * (MU0_OVER_4PI / (r * r * r)))
}

/// Exact vector potential of a straight filament from `start` to `end`
/// carrying `current`:
/// `(μ0/4π) I û ln((R1 + R2 + L) / (R1 + R2 − L))`.
pub fn segment_a(start: Vec3, end: Vec3, current: f64, point: Vec3, guard: f64) -> Result<Vec3> {
    let d = end - start;
    let len = d.norm();
    if len == 0.0 {
        return Ok(Vec3::ZERO);
    }
    let dist = point_segment_distance(point, start, end);
    if dist <= guard {
        return Err(PhaseError::Singularity { distance: dist, guard });
    }
    let r1 = (point - start).norm();
    let r2 = (point - end).norm();
    let sum = r1 + r2;
    // (R1+R2)^2 - L^2 computed without cancellation for points far along the line.
    let denom = (sum * sum - len * len) / (sum + len);
    let log = ((sum + len) / denom).ln();
    Ok(d * (MU0_OVER_4PI * current * log / len))
}

pub fn point_segment_distance(point: Vec3, start: Vec3, end: Vec3) -> f64 {
    let d = end - start;
    let l2 = d.norm_squared();
    if l2 == 0.0 {
        return (point - start).norm();
    }
    let s = ((point - start).dot(d) / l2).clamp(0.0, 1.0);
    (point - (start + d * s)).norm()
}
