//! Magnetic dipoles (the neutron model).

use serde::{Deserialize, Serialize};

use crate::error::{PhaseError, Result};
use crate::sources::kernels::dipole_a_guarded;
use crate::sources::trajectory::Trajectory;
use crate::vec3::Vec3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DipoleSource {
    pub position: Vec3,
    pub moment: Vec3,
}

impl DipoleSource {
    pub fn new(position: Vec3, moment: Vec3) -> Result<Self> {
        if !(position.is_finite() && moment.is_finite()) {
            return Err(PhaseError::InvalidParameter {
                name: "moment",
                reason: "dipole position and moment must be finite".into(),
            });
        }
        Ok(Self { position, moment })
    }

    pub fn vector_potential(&self, point: Vec3, guard: f64) -> Result<Vec3> {
        dipole_a_guarded(self.moment, point - self.position, guard)
    }
}

/// A dipole of fixed moment carried along a path.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DipoleTrajectory {
    pub moment: Vec3,
    pub path: Trajectory,
}

impl DipoleTrajectory {
    pub fn new(moment: Vec3, path: Trajectory) -> Result<Self> {
        DipoleSource::new(path.samples()[0].position, moment)?;
        Ok(Self { moment, path })
    }

    /// The dipole resting at `source.position` for `dwell` seconds.
    pub fn resting(source: DipoleSource, dwell: f64) -> Result<Self> {
        crate::error::require_positive("dwell", dwell)?;
        Self::new(source.moment, Trajectory::stationary(source.position, 0.0, dwell)?)
    }
}
