//! Solenoids: the closed-form infinite solenoid and a finite solenoid built
//! as a stack of polygonal turns.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::constants::MU0;
use crate::error::{require_finite, require_positive, PhaseError, Result};
use crate::sources::wire::{Circuit, Polyline};
use crate::vec3::Vec3;

/// Default number of straight segments per turn.
pub const DEFAULT_SEGMENTS_PER_TURN: usize = 64;
/// Fewest segments per turn accepted by the loop discretization.
pub const MIN_SEGMENTS_PER_TURN: usize = 16;

/// Solenoid winding description. Positive `current` circulates right-handed
/// about `axis_direction`, so the interior field points along it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolenoidSpec {
    pub axis_point: Vec3,
    pub axis_direction: Vec3,
    pub radius: f64,
    pub turns_per_meter: f64,
    pub current: f64,
    /// `None` for an infinitely long solenoid.
    pub half_length: Option<f64>,
}

impl SolenoidSpec {
    pub fn infinite(
        axis_point: Vec3,
        axis_direction: Vec3,
        radius: f64,
        turns_per_meter: f64,
        current: f64,
    ) -> Result<Self> {
        Self::new(axis_point, axis_direction, radius, turns_per_meter, current, None)
    }

    pub fn new(
        axis_point: Vec3,
        axis_direction: Vec3,
        radius: f64,
        turns_per_meter: f64,
        current: f64,
        half_length: Option<f64>,
    ) -> Result<Self> {
        if !axis_point.is_finite() {
            return Err(PhaseError::InvalidParameter {
                name: "axis_point",
                reason: "must be finite".into(),
            });
        }
        let axis_direction = axis_direction.normalized().ok_or(PhaseError::InvalidParameter {
            name: "axis_direction",
            reason: "must be a nonzero finite vector".into(),
        })?;
        require_positive("radius", radius)?;
        require_positive("turns_per_meter", turns_per_meter)?;
        require_finite("current", current)?;
        if let Some(h) = half_length {
            require_positive("half_length", h)?;
        }
        Ok(Self {
            axis_point,
            axis_direction,
            radius,
            turns_per_meter,
            current,
            half_length,
        })
    }

    pub fn is_infinite(&self) -> bool {
        self.half_length.is_none()
    }

    /// Copy with a finite half-length.
    pub fn truncated(&self, half_length: f64) -> Result<Self> {
        require_positive("half_length", half_length)?;
        Ok(Self {
            half_length: Some(half_length),
            ..*self
        })
    }

    pub fn with_current(&self, current: f64) -> Self {
        Self { current, ..*self }
    }

    /// Interior field of the infinite solenoid, B = μ0 n I.
    pub fn interior_field(&self) -> f64 {
        MU0 * self.turns_per_meter * self.current
    }

    /// Enclosed flux of the infinite solenoid, Φ = μ0 n I π R².
    pub fn flux(&self) -> f64 {
        self.interior_field() * PI * self.radius * self.radius
    }

    /// Split `point - axis_point` into (axial coordinate, perpendicular vector).
    pub fn decompose(&self, point: Vec3) -> (f64, Vec3) {
        let d = point - self.axis_point;
        let z = d.dot(self.axis_direction);
        (z, d - self.axis_direction * z)
    }

    /// Build the turns as a circuit. Each turn is an equal-area regular
    /// polygon; the per-turn current is rescaled so the sheet current n·I is
    /// exact after rounding the turn count.
    pub fn windings(&self, segments_per_turn: usize) -> Result<Circuit> {
        let half = self
            .half_length
            .ok_or_else(|| PhaseError::UnsupportedGeometry("loop discretization needs a finite half_length".into()))?;
        if segments_per_turn < MIN_SEGMENTS_PER_TURN {
            return Err(PhaseError::InvalidParameter {
                name: "segments_per_turn",
                reason: format!("need at least {MIN_SEGMENTS_PER_TURN}, got {segments_per_turn}"),
            });
        }
        let nominal = 2.0 * half * self.turns_per_meter;
        let turns = nominal.round().max(1.0) as usize;
        let spacing = 2.0 * half / turns as f64;
        let current = self.current * nominal / turns as f64;
        let mut circuit = Circuit::default();
        for k in 0..turns {
            let z = -half + (k as f64 + 0.5) * spacing;
            let center = self.axis_point + self.axis_direction * z;
            let turn = Polyline::equal_area_polygon(center, self.axis_direction, self.radius, segments_per_turn)?;
            circuit.extend(Circuit::from_loop(&turn, current)?);
        }
        Ok(circuit)
    }
}

/// Closed-form vector potential of an infinite solenoid: azimuthal, with
/// magnitude μ0 n I ρ/2 inside and μ0 n I R²/(2ρ) outside.
///
/// On the axis the potential is zero (the limit of the interior branch).
pub fn solenoid_a_analytic(s: &SolenoidSpec, point: Vec3) -> Result<Vec3> {
    if !s.is_infinite() {
        return Err(PhaseError::UnsupportedGeometry(
            "closed form applies to infinite solenoids; use solenoid_a_loops".into(),
        ));
    }
    let (_, perp) = s.decompose(point);
    let rho = perp.norm();
    if rho == 0.0 {
        return Ok(Vec3::ZERO);
    }
    let b = s.interior_field();
    let magnitude = if rho <= s.radius {
        0.5 * b * rho
    } else {
        0.5 * b * s.radius * s.radius / rho
    };
    let phi_hat = s.axis_direction.cross(perp) / rho;
    Ok(phi_hat * magnitude)
}

/// Vector potential of a finite solenoid summed over its discretized turns.
pub fn solenoid_a_loops(s: &SolenoidSpec, point: Vec3, segments_per_turn: usize, guard: f64) -> Result<Vec3> {
    s.windings(segments_per_turn)?.vector_potential(point, guard)
}
