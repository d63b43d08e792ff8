//! Equivalent loop currents and the ideal superconducting shield.

use serde::{Deserialize, Serialize};

use crate::error::{require_finite, require_positive, PhaseError, Result};
use crate::sources::wire::Polyline;

/// The difference between two interfering paths, viewed as a closed current
/// that flows for `duration`. One electron transit has `current · duration = e`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquivalentLoopCurrent {
    pub path: Polyline,
    pub current: f64,
    pub duration: f64,
}

impl EquivalentLoopCurrent {
    pub fn new(path: Polyline, current: f64, duration: f64) -> Result<Self> {
        require_finite("current", current)?;
        require_positive("duration", duration)?;
        Ok(Self {
            path,
            current,
            duration,
        })
    }

    /// Loop carrying `charge` around `path` in time `duration`.
    pub fn for_charge(path: Polyline, charge: f64, duration: f64) -> Result<Self> {
        require_positive("duration", duration)?;
        Self::new(path, charge / duration, duration)
    }

    /// Transported charge, I·duration.
    pub fn charge(&self) -> f64 {
        self.current * self.duration
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShieldMode {
    /// Induces the exact opposite linked current on its outer layer.
    Ideal,
    Off,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShieldSpec {
    /// Path of the induced current in the shield's outer layer.
    pub surface_loop: Polyline,
    /// Superconducting critical temperature, K.
    pub critical_temperature: f64,
    pub mode: ShieldMode,
}

impl ShieldSpec {
    pub fn new(surface_loop: Polyline, critical_temperature: f64, mode: ShieldMode) -> Result<Self> {
        require_positive("critical_temperature", critical_temperature)?;
        Ok(Self {
            surface_loop,
            critical_temperature,
            mode,
        })
    }
}

/// Current induced in an ideal shield by `excitation`: equal and opposite,
/// on the shield's surface loop, for the same duration.
///
/// The surface loop is reoriented if needed so that it circulates the same
/// way as the excitation loop; the sign of the induced current then carries
/// the opposition.
pub fn induced_shield_current(
    shield: &ShieldSpec,
    excitation: &EquivalentLoopCurrent,
) -> Result<EquivalentLoopCurrent> {
    if shield.mode == ShieldMode::Off {
        return Err(PhaseError::ShieldOff);
    }
    let aligned = if shield.surface_loop.vector_area().dot(excitation.path.vector_area()) < 0.0 {
        shield.surface_loop.reversed()
    } else {
        shield.surface_loop.clone()
    };
    EquivalentLoopCurrent::new(aligned, -excitation.current, excitation.duration)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vec3::Vec3;

    fn ring(r: f64) -> Polyline {
        Polyline::regular_polygon(Vec3::ZERO, Vec3::Z, r, 32).unwrap()
    }

    #[test]
    fn opposite_current() {
        let shield = ShieldSpec::new(ring(2.0), 9.2, ShieldMode::Ideal).unwrap();
        let exc = EquivalentLoopCurrent::new(ring(3.0), 2.0, 1e-9).unwrap();
        let induced = induced_shield_current(&shield, &exc).unwrap();
        assert_eq!(induced.current, -2.0);
        assert_eq!(induced.duration, 1e-9);
        assert_eq!(induced.path, shield.surface_loop);
    }

    #[test]
    fn zero_excitation_zero_induced() {
        let shield = ShieldSpec::new(ring(2.0), 9.2, ShieldMode::Ideal).unwrap();
        let exc = EquivalentLoopCurrent::new(ring(3.0), 0.0, 1e-9).unwrap();
        assert_eq!(induced_shield_current(&shield, &exc).unwrap().current, 0.0);
    }

    #[test]
    fn shield_off_has_nothing_to_couple() {
        let shield = ShieldSpec::new(ring(2.0), 9.2, ShieldMode::Off).unwrap();
        let exc = EquivalentLoopCurrent::new(ring(3.0), 1.0, 1.0).unwrap();
        assert_eq!(induced_shield_current(&shield, &exc), Err(PhaseError::ShieldOff));
    }

    #[test]
    fn reversed_surface_loop_is_realigned() {
        let shield = ShieldSpec::new(ring(2.0).reversed(), 9.2, ShieldMode::Ideal).unwrap();
        let exc = EquivalentLoopCurrent::new(ring(3.0), 1.0, 1.0).unwrap();
        let induced = induced_shield_current(&shield, &exc).unwrap();
        assert!(induced.path.vector_area().z > 0.0);
        assert_eq!(induced.current, -1.0);
    }

    #[test]
    fn rejects_non_positive_tc_and_duration() {
        assert!(ShieldSpec::new(ring(1.0), 0.0, ShieldMode::Ideal).is_err());
        assert!(EquivalentLoopCurrent::new(ring(1.0), 1.0, 0.0).is_err());
    }

    #[test]
    fn charge_round_trip() {
        let l = EquivalentLoopCurrent::for_charge(ring(1.0), 1.6e-19, 1e-12).unwrap();
        assert!((l.charge() - 1.6e-19).abs() < 1e-33);
    }
}
