//! Error vocabulary shared by every part of the engine.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PhaseError {
    /// Field evaluated closer to a source than the singularity guard allows.
    #[error("evaluation point {distance:e} m from a source, inside guard {guard:e} m")]
    Singularity { distance: f64, guard: f64 },

    /// Adaptive quadrature hit its subdivision budget before meeting tolerance.
    #[error(
        "quadrature did not converge: estimated error {achieved:e} > target {requested:e} after {subdivisions} panels"
    )]
    NonConvergence {
        achieved: f64,
        requested: f64,
        subdivisions: usize,
    },

    #[error("unsupported geometry: {0}")]
    UnsupportedGeometry(String),

    #[error("shield is off; there is no induced current to couple")]
    ShieldOff,

    #[error("energy profile has no samples")]
    EmptyProfile,

    #[error("profiles do not share a time grid: {0}")]
    MismatchedGrids(String),

    #[error("invalid trajectory: {0}")]
    InvalidTrajectory(String),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("loop must link the solenoid exactly once, found linking number {linking_number:.3}")]
    Topology { linking_number: f64 },

    #[error("`{name}` must be strictly positive, got {value}")]
    NonPositiveInput { name: &'static str, value: f64 },
}

pub type Result<T> = std::result::Result<T, PhaseError>;

pub(crate) fn require_positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(PhaseError::NonPositiveInput { name, value })
    }
}

pub(crate) fn require_finite(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(PhaseError::InvalidParameter {
            name,
            reason: format!("must be finite, got {value}"),
        })
    }
}
