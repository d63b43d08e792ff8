//! The dipole-on-windings integral for a neutron resting on a solenoid axis.
//!
//! A turn at axial offset z sees the dipole's azimuthal potential
//! (μ0/4π) μ sinθ / r² along its whole circumference. With n turns per metre
//! the turns in dz contribute (μ0/2)(μ sinθ/r²) R I n dz Δt/ħ. The infinite
//! z range is mapped onto θ ∈ (0, π) through r = R/sinθ, z = R/tanθ.

use crate::constants::{HBAR, MU0};
use crate::error::{require_finite, require_positive, PhaseError, Result};
use crate::phase::quadrature::{integrate, QuadratureConfig};
use crate::phase_value::PhaseValue;
use crate::sources::solenoid::SolenoidSpec;

/// Phase picked up by the windings of an infinite solenoid from a dipole of
/// axial moment `mu` (signed along the solenoid axis) resting on the axis for
/// `dwell` seconds. Equals μ μ0 n I Δt/ħ.
pub fn phase_neutron_integral(mu: f64, sol: &SolenoidSpec, dwell: f64, cfg: &QuadratureConfig) -> Result<PhaseValue> {
    if !sol.is_infinite() {
        return Err(PhaseError::UnsupportedGeometry(
            "the θ substitution covers an infinite solenoid".into(),
        ));
    }
    require_finite("mu", mu)?;
    require_positive("dwell", dwell)?;
    let radius = sol.radius;
    let prefactor = 0.5 * MU0 * mu * radius * sol.current * sol.turns_per_meter * dwell / HBAR;
    let integral = integrate(
        |theta| {
            let s = theta.sin();
            let r = radius / s;
            // z = R cotθ, |dz/dθ| = R / sin²θ
            let dz_dtheta = radius / (s * s);
            Ok(prefactor * s / (r * r) * dz_dtheta)
        },
        &[0.0, std::f64::consts::FRAC_PI_2, std::f64::consts::PI],
        cfg,
    )?;
    Ok(PhaseValue::single("apparatus-side:dipole-on-windings", integral.value)
        .with_diagnostics(integral.error_estimate, integral.panels))
}
