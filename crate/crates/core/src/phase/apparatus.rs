//! Apparatus-side phases: the potential of the moving source acting on the
//! currents of a circuit, (1/ħ) ∫ dt Σ I A_source(midpoint, t)·ds.

use crate::constants::{HBAR, MU0_OVER_4PI};
use crate::error::{PhaseError, Result};
use crate::phase::quadrature::{integrate, QuadratureConfig};
use crate::phase_value::PhaseValue;
use crate::sources::dipole::DipoleTrajectory;
use crate::sources::trajectory::{ChargeTrajectory, Trajectory};
use crate::sources::wire::Circuit;
use crate::vec3::Vec3;

/// The body whose potential acts on the circuit.
#[derive(Debug, Clone, Copy)]
pub enum MovingSource<'a> {
    Charge(&'a ChargeTrajectory),
    Dipole(&'a DipoleTrajectory),
}

impl<'a> MovingSource<'a> {
    fn path(&self) -> &'a Trajectory {
        match self {
            MovingSource::Charge(c) => &c.path,
            MovingSource::Dipole(d) => &d.path,
        }
    }
}

impl<'a> From<&'a ChargeTrajectory> for MovingSource<'a> {
    fn from(c: &'a ChargeTrajectory) -> Self {
        MovingSource::Charge(c)
    }
}

impl<'a> From<&'a DipoleTrajectory> for MovingSource<'a> {
    fn from(d: &'a DipoleTrajectory) -> Self {
        MovingSource::Dipole(d)
    }
}

/// Σ over elements of I · A_source(midpoint) · ds at one instant. The sum over
/// elements runs inside the time integrand, in element order.
fn coupling_at(source: MovingSource<'_>, r: Vec3, v: Vec3, circuit: &Circuit, guard: f64) -> Result<f64> {
    let mut sum = 0.0;
    match source {
        MovingSource::Charge(c) => {
            let k = MU0_OVER_4PI * c.charge;
            for e in circuit.elements() {
                let d = e.midpoint - r;
                let dist = d.norm();
                if dist <= guard {
                    return Err(PhaseError::Singularity { distance: dist, guard });
                }
                sum += e.current * (k / dist) * v.dot(e.direction_length);
            }
        }
        MovingSource::Dipole(dp) => {
            for e in circuit.elements() {
                let d = e.midpoint - r;
                let dist = d.norm();
                if dist <= guard {
                    return Err(PhaseError::Singularity { distance: dist, guard });
                }
                let a = dp.moment.cross(d) * (MU0_OVER_4PI / (dist * dist * dist));
                sum += e.current * a.dot(e.direction_length);
            }
        }
    }
    Ok(sum)
}

/// (1/ħ) ∫ dt Σ I A_source·ds for a charge or dipole moving past `circuit`.
pub fn phase_apparatus_side<'a>(
    source: impl Into<MovingSource<'a>>,
    circuit: &Circuit,
    cfg: &QuadratureConfig,
) -> Result<PhaseValue> {
    let source = source.into();
    let path = source.path();
    let guard = cfg.singularity_guard;
    let integral = integrate(
        |t| {
            let (r, v) = path.state_at(t);
            coupling_at(source, r, v, circuit, guard)
        },
        &path.breakpoints(),
        cfg,
    )?;
    Ok(PhaseValue::single("apparatus-side", integral.value / HBAR)
        .with_diagnostics(integral.error_estimate / HBAR, integral.panels))
}
