//! Physical constants in SI units.
//!
//! `mu0_over_4pi` is pinned to exactly `1e-7` T·m/A (the pre-2019 defined
//! value) so closed-form expectations come out exact.

use serde::{Deserialize, Serialize};

use crate::error::{require_positive, Result};

/// Reduced Planck constant, J·s (CODATA 2018).
pub const HBAR: f64 = 1.054_571_817e-34;
/// Elementary charge, C (exact).
pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;
/// Boltzmann constant, J/K (exact).
pub const BOLTZMANN: f64 = 1.380_649e-23;
/// μ0/4π, T·m/A.
pub const MU0_OVER_4PI: f64 = 1e-7;
/// Vacuum permeability μ0 = 4π · 1e-7.
pub const MU0: f64 = 4.0 * std::f64::consts::PI * MU0_OVER_4PI;

/// A set of constants threaded through the engine.
///
/// Fields are private; the set is immutable once built.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SIConstants {
    hbar: f64,
    mu0_over_4pi: f64,
    elementary_charge: f64,
    boltzmann: f64,
}

impl Default for SIConstants {
    fn default() -> Self {
        Self {
            hbar: HBAR,
            mu0_over_4pi: MU0_OVER_4PI,
            elementary_charge: ELEMENTARY_CHARGE,
            boltzmann: BOLTZMANN,
        }
    }
}

impl SIConstants {
    pub fn new(hbar: f64, mu0_over_4pi: f64, elementary_charge: f64, boltzmann: f64) -> Result<Self> {
        Ok(Self {
            hbar: require_positive("hbar", hbar)?,
            mu0_over_4pi: require_positive("mu0_over_4pi", mu0_over_4pi)?,
            elementary_charge: require_positive("elementary_charge", elementary_charge)?,
            boltzmann: require_positive("boltzmann", boltzmann)?,
        })
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn mu0_over_4pi(&self) -> f64 {
        self.mu0_over_4pi
    }

    pub fn mu0(&self) -> f64 {
        4.0 * std::f64::consts::PI * self.mu0_over_4pi
    }

    pub fn elementary_charge(&self) -> f64 {
        self.elementary_charge
    }

    pub fn boltzmann(&self) -> f64 {
        self.boltzmann
    }

    /// Planck constant h = 2πħ.
    pub fn planck(&self) -> f64 {
        2.0 * std::f64::consts::PI * self.hbar
    }

    /// Flux quantum h/(2e); a once-linking loop around this flux picks up π.
    pub fn half_flux_quantum_for_pi(&self) -> f64 {
        self.planck() / (2.0 * self.elementary_charge)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_positive() {
        let c = SIConstants::default();
        assert!(c.hbar() > 0.0 && c.mu0_over_4pi() > 0.0);
        assert!(c.elementary_charge() > 0.0 && c.boltzmann() > 0.0);
        assert_eq!(c.mu0_over_4pi(), 1e-7);
    }

    #[test]
    fn rejects_non_positive() {
        assert!(SIConstants::new(0.0, 1e-7, 1.0, 1.0).is_err());
        assert!(SIConstants::new(1.0, -1e-7, 1.0, 1.0).is_err());
        assert!(SIConstants::new(1.0, 1e-7, f64::NAN, 1.0).is_err());
    }

    #[test]
    fn half_flux_quantum_gives_pi() {
        let c = SIConstants::default();
        let phase = c.elementary_charge() * c.half_flux_quantum_for_pi() / c.hbar();
        assert!((phase - std::f64::consts::PI).abs() < 1e-15);
    }
}
