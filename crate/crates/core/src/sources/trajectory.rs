//! Sampled spacetime paths with cubic Hermite interpolation between samples.
//!
//! The interpolated velocity is the exact time derivative of the interpolated
//! position, so `∫ A·v dt` along a trajectory equals `∫ A·dr` along the
//! interpolated curve.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{require_finite, require_positive, PhaseError, Result};
use crate::vec3::Vec3;

/// Maximum relative mismatch between finite-difference and sampled velocity.
pub const VELOCITY_CONSISTENCY: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PathSample {
    pub t: f64,
    pub position: Vec3,
    pub velocity: Vec3,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory {
    samples: Vec<PathSample>,
}

impl Trajectory {
    pub fn new(samples: Vec<PathSample>) -> Result<Self> {
        if samples.len() < 2 {
            return Err(PhaseError::InvalidTrajectory(format!(
                "need at least 2 samples, got {}",
                samples.len()
            )));
        }
        for (i, s) in samples.iter().enumerate() {
            if !(s.t.is_finite() && s.position.is_finite() && s.velocity.is_finite()) {
                return Err(PhaseError::InvalidTrajectory(format!("sample {i} is not finite")));
            }
        }
        for (i, w) in samples.windows(2).enumerate() {
            let dt = w[1].t - w[0].t;
            if dt <= 0.0 {
                return Err(PhaseError::InvalidTrajectory(format!(
                    "times must be strictly increasing (samples {i} and {})",
                    i + 1
                )));
            }
            let fd = (w[1].position - w[0].position) / dt;
            let avg = (w[0].velocity + w[1].velocity) * 0.5;
            let scale = fd.norm().max(avg.norm());
            if (fd - avg).norm() > VELOCITY_CONSISTENCY * scale {
                return Err(PhaseError::InvalidTrajectory(format!(
                    "velocity inconsistent with positions between samples {i} and {}",
                    i + 1
                )));
            }
        }
        Ok(Self { samples })
    }

    /// Constant-velocity path sampled at `samples` evenly spaced times.
    pub fn straight(start: Vec3, velocity: Vec3, t0: f64, t1: f64, samples: usize) -> Result<Self> {
        let n = samples.max(2);
        let span = t1 - t0;
        Self::new(
            (0..n)
                .map(|i| {
                    let t = t0 + span * i as f64 / (n - 1) as f64;
                    PathSample {
                        t,
                        position: start + velocity * (t - t0),
                        velocity,
                    }
                })
                .collect(),
        )
    }

    /// A body at rest at `position` from `t0` to `t1`.
    pub fn stationary(position: Vec3, t0: f64, t1: f64) -> Result<Self> {
        Self::straight(position, Vec3::ZERO, t0, t1, 2)
    }

    /// Uniform circular motion about `axis` (right-handed), `turns` full
    /// revolutions between `t0` and `t1`, starting at angle 0 of the basis
    /// returned by [`Vec3::any_perpendicular`].
    pub fn circle(
        center: Vec3,
        axis: Vec3,
        radius: f64,
        turns: f64,
        t0: f64,
        t1: f64,
        samples_per_turn: usize,
    ) -> Result<Self> {
        require_positive("radius", radius)?;
        require_finite("turns", turns)?;
        let axis = axis
            .normalized()
            .ok_or_else(|| PhaseError::InvalidTrajectory("circle axis must be nonzero".into()))?;
        let e1 = axis.any_perpendicular();
        let e2 = axis.cross(e1);
        let n = ((samples_per_turn.max(8) as f64) * turns.abs()).ceil() as usize + 1;
        let omega = 2.0 * PI * turns / (t1 - t0);
        Self::new(
            (0..n)
                .map(|i| {
                    let t = t0 + (t1 - t0) * i as f64 / (n - 1) as f64;
                    let phi = omega * (t - t0);
                    let (s, c) = phi.sin_cos();
                    PathSample {
                        t,
                        position: center + (e1 * c + e2 * s) * radius,
                        velocity: (e2 * c - e1 * s) * (radius * omega),
                    }
                })
                .collect(),
        )
    }

    /// Sample an analytic path `f(t) -> (position, velocity)`.
    pub fn from_fn(t0: f64, t1: f64, samples: usize, f: impl Fn(f64) -> (Vec3, Vec3)) -> Result<Self> {
        let n = samples.max(2);
        Self::new(
            (0..n)
                .map(|i| {
                    let t = t0 + (t1 - t0) * i as f64 / (n - 1) as f64;
                    let (position, velocity) = f(t);
                    PathSample { t, position, velocity }
                })
                .collect(),
        )
    }

    pub fn samples(&self) -> &[PathSample] {
        &self.samples
    }

    pub fn start_time(&self) -> f64 {
        self.samples[0].t
    }

    pub fn end_time(&self) -> f64 {
        self.samples[self.samples.len() - 1].t
    }

    pub fn breakpoints(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.t).collect()
    }

    /// Same path traversed backwards in the same time window.
    pub fn reversed(&self) -> Trajectory {
        let t0 = self.start_time();
        let t1 = self.end_time();
        let samples = self
            .samples
            .iter()
            .rev()
            .map(|s| PathSample {
                t: t0 + (t1 - s.t),
                position: s.position,
                velocity: -s.velocity,
            })
            .collect();
        Trajectory { samples }
    }

    /// Interpolated (position, velocity) at time `t`, clamped to the sampled window.
    pub fn state_at(&self, t: f64) -> (Vec3, Vec3) {
        let last = self.samples.len() - 2;
        let i = match self
            .samples
            .binary_search_by(|s| s.t.partial_cmp(&t).unwrap_or(std::cmp::Ordering::Less))
        {
            Ok(i) => i.min(last),
            Err(0) => 0,
            Err(i) => (i - 1).min(last),
        };
        hermite(&self.samples[i], &self.samples[i + 1], t)
    }
}

fn hermite(a: &PathSample, b: &PathSample, t: f64) -> (Vec3, Vec3) {
    let h = b.t - a.t;
    let s = ((t - a.t) / h).clamp(0.0, 1.0);
    let s2 = s * s;
    let s3 = s2 * s;
    let h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
    let h10 = s3 - 2.0 * s2 + s;
    let h01 = -2.0 * s3 + 3.0 * s2;
    let h11 = s3 - s2;
    let position = a.position * h00 + a.velocity * (h * h10) + b.position * h01 + b.velocity * (h * h11);
    let d00 = 6.0 * s2 - 6.0 * s;
    let d10 = 3.0 * s2 - 4.0 * s + 1.0;
    let d01 = -d00;
    let d11 = 3.0 * s2 - 2.0 * s;
    let velocity = (a.position * d00 + b.position * d01) / h + a.velocity * d10 + b.velocity * d11;
    (position, velocity)
}

/// A point charge moving along a sampled path.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChargeTrajectory {
    pub charge: f64,
    pub path: Trajectory,
}

impl ChargeTrajectory {
    pub fn new(charge: f64, path: Trajectory) -> Result<Self> {
        require_finite("charge", charge)?;
        Ok(Self { charge, path })
    }
}
