//! Directed wire elements, closed polylines, and circuits built from them.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::constants::MU0_OVER_4PI;
use crate::error::{require_finite, require_positive, PhaseError, Result};
use crate::sources::kernels::segment_a;
use crate::vec3::Vec3;

/// A short straight piece of wire: `direction_length` is the directed
/// element d**s**, located at `midpoint`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WireElement {
    pub midpoint: Vec3,
    pub direction_length: Vec3,
    pub current: f64,
}

impl WireElement {
    pub fn new(midpoint: Vec3, direction_length: Vec3, current: f64) -> Result<Self> {
        if !(midpoint.is_finite() && direction_length.is_finite()) {
            return Err(PhaseError::InvalidParameter {
                name: "wire_element",
                reason: "midpoint and direction must be finite".into(),
            });
        }
        if direction_length.norm() <= 0.0 {
            return Err(PhaseError::InvalidParameter {
                name: "direction_length",
                reason: "wire element must have nonzero length".into(),
            });
        }
        require_finite("current", current)?;
        Ok(Self {
            midpoint,
            direction_length,
            current,
        })
    }

    pub fn from_endpoints(start: Vec3, end: Vec3, current: f64) -> Result<Self> {
        Self::new((start + end) * 0.5, end - start, current)
    }

    /// Midpoint-rule contribution `(μ0/4π) I ds / r` at `point`.
    #[inline]
    pub fn vector_potential(&self, point: Vec3, guard: f64) -> Result<Vec3> {
        let r = (point - self.midpoint).norm();
        if r <= guard {
            return Err(PhaseError::Singularity { distance: r, guard });
        }
        Ok(self.direction_length * (MU0_OVER_4PI * self.current / r))
    }
}

/// A closed polyline; the last vertex repeats the first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polyline {
    vertices: Vec<Vec3>,
}

impl Polyline {
    /// Build from vertices. If the last vertex does not equal the first the
    /// loop is closed automatically.
    pub fn closed(mut vertices: Vec<Vec3>) -> Result<Self> {
        if vertices.iter().any(|v| !v.is_finite()) {
            return Err(PhaseError::InvalidParameter {
                name: "loop",
                reason: "vertices must be finite".into(),
            });
        }
        if vertices.first() != vertices.last() {
            if let Some(&first) = vertices.first() {
                vertices.push(first);
            }
        }
        if vertices.len() < 4 {
            return Err(PhaseError::InvalidParameter {
                name: "loop",
                reason: "a closed loop needs at least 3 distinct vertices".into(),
            });
        }
        Ok(Self { vertices })
    }

    /// Regular polygon with `segments` sides, vertices on a circle of
    /// `vertex_radius`, traversed right-handed about `axis`.
    pub fn regular_polygon(center: Vec3, axis: Vec3, vertex_radius: f64, segments: usize) -> Result<Self> {
        Self::radial_profile(center, axis, segments, |_| vertex_radius)
    }

    /// Regular polygon whose enclosed area equals that of the circle of
    /// `radius`. Stacks of these reproduce the circle's flux.
    pub fn equal_area_polygon(center: Vec3, axis: Vec3, radius: f64, segments: usize) -> Result<Self> {
        require_positive("radius", radius)?;
        let n = segments as f64;
        let scale = (2.0 * PI / (n * (2.0 * PI / n).sin())).sqrt();
        Self::regular_polygon(center, axis, radius * scale, segments)
    }

    /// Star-shaped loop around `axis` with vertex radius `radius(angle)`.
    pub fn radial_profile(center: Vec3, axis: Vec3, segments: usize, radius: impl Fn(f64) -> f64) -> Result<Self> {
        if segments < 3 {
            return Err(PhaseError::InvalidParameter {
                name: "segments",
                reason: format!("need at least 3, got {segments}"),
            });
        }
        let axis = axis.normalized().ok_or(PhaseError::InvalidParameter {
            name: "axis",
            reason: "must be nonzero".into(),
        })?;
        let e1 = axis.any_perpendicular();
        let e2 = axis.cross(e1);
        let mut vertices = Vec::with_capacity(segments + 1);
        for k in 0..segments {
            let phi = 2.0 * PI * k as f64 / segments as f64;
            let r = require_positive("radius", radius(phi))?;
            let (s, c) = phi.sin_cos();
            vertices.push(center + (e1 * c + e2 * s) * r);
        }
        Self::closed(vertices)
    }

    pub fn vertices(&self) -> &[Vec3] {
        &self.vertices
    }

    /// Consecutive vertex pairs.
    pub fn segments(&self) -> impl Iterator<Item = (Vec3, Vec3)> + '_ {
        self.vertices.windows(2).map(|w| (w[0], w[1]))
    }

    pub fn reversed(&self) -> Polyline {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        Polyline { vertices }
    }

    /// Vector area ½ ∮ r × dr; its direction is the right-handed normal.
    pub fn vector_area(&self) -> Vec3 {
        let origin = self.vertices[0];
        self.segments()
            .map(|(a, b)| (a - origin).cross(b - origin))
            .sum::<Vec3>()
            * 0.5
    }

    pub fn centroid(&self) -> Vec3 {
        let n = self.vertices.len() - 1;
        self.vertices[..n].iter().copied().sum::<Vec3>() / n as f64
    }

    pub fn length(&self) -> f64 {
        self.segments().map(|(a, b)| (b - a).norm()).sum()
    }

    /// Largest distance from the centroid to a vertex.
    pub fn extent(&self) -> f64 {
        let c = self.centroid();
        self.vertices.iter().map(|v| (*v - c).norm()).fold(0.0, f64::max)
    }

    /// Exact potential of this loop carrying `current` (straight-filament formula per side).
    pub fn vector_potential(&self, current: f64, point: Vec3, guard: f64) -> Result<Vec3> {
        let mut a = Vec3::ZERO;
        for (p0, p1) in self.segments() {
            a += segment_a(p0, p1, current, point, guard)?;
        }
        Ok(a)
    }

    /// One wire element per side.
    pub fn to_elements(&self, current: f64) -> Result<Vec<WireElement>> {
        self.segments()
            .filter(|(a, b)| a != b)
            .map(|(a, b)| WireElement::from_endpoints(a, b, current))
            .collect()
    }
}

/// A list of wire elements; the apparatus side of a phase computation.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Circuit {
    elements: Vec<WireElement>,
}

impl Circuit {
    pub fn new(elements: Vec<WireElement>) -> Self {
        Self { elements }
    }

    pub fn from_loop(polyline: &Polyline, current: f64) -> Result<Self> {
        Ok(Self::new(polyline.to_elements(current)?))
    }

    pub fn elements(&self) -> &[WireElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn extend(&mut self, other: Circuit) {
        self.elements.extend(other.elements);
    }

    /// Sum of midpoint-rule contributions `(μ0/4π) I ds / r`.
    pub fn vector_potential(&self, point: Vec3, guard: f64) -> Result<Vec3> {
        let mut a = Vec3::ZERO;
        for e in &self.elements {
            a += e.vector_potential(point, guard)?;
        }
        Ok(a)
    }

    /// Same geometry with every current multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Circuit {
        Circuit::new(
            self.elements
                .iter()
                .map(|e| WireElement {
                    current: e.current * factor,
                    ..*e
                })
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn element_rejects_zero_length() {
        assert!(WireElement::new(Vec3::ZERO, Vec3::ZERO, 1.0).is_err());
        assert!(WireElement::new(Vec3::ZERO, Vec3::X, f64::INFINITY).is_err());
    }

    #[test]
    fn polyline_auto_closes() {
        let p = Polyline::closed(vec![Vec3::ZERO, Vec3::X, Vec3::Y]).unwrap();
        assert_eq!(p.vertices().len(), 4);
        assert_eq!(p.vertices()[0], p.vertices()[3]);
    }

    #[test]
    fn polyline_too_short() {
        assert!(Polyline::closed(vec![Vec3::ZERO, Vec3::X]).is_err());
    }

    #[test]
    fn polygon_orientation_is_right_handed() {
        let p = Polyline::regular_polygon(Vec3::ZERO, Vec3::Z, 1.0, 16).unwrap();
        assert!(p.vector_area().z > 0.0);
        assert!(p.reversed().vector_area().z < 0.0);
    }

    #[test]
    fn equal_area_polygon_area() {
        for n in [16, 64, 256] {
            let p = Polyline::equal_area_polygon(Vec3::new(1.0, 2.0, 3.0), Vec3::new(1.0, 1.0, 0.0), 0.3, n).unwrap();
            let area = p.vector_area().norm();
            assert!((area - PI * 0.09).abs() < 1e-13, "n={n} area={area}");
        }
    }

    #[test]
    fn loop_potential_far_field_is_dipolar() {
        // A small loop of area S and current I looks like a dipole of moment I S n̂.
        let r = 1e-3;
        let loop_ = Polyline::equal_area_polygon(Vec3::ZERO, Vec3::Z, r, 256).unwrap();
        let point = Vec3::new(0.7, 0.0, 0.2);
        let a = loop_.vector_potential(2.0, point, 1e-12).unwrap();
        let dip = crate::sources::kernels::dipole_a(Vec3::Z * (2.0 * PI * r * r), point).unwrap();
        assert!((a - dip).norm() < 1e-5 * dip.norm());
    }

    #[test]
    fn circuit_scaling() {
        let p = Polyline::regular_polygon(Vec3::ZERO, Vec3::Z, 1.0, 8).unwrap();
        let c = Circuit::from_loop(&p, 1.0).unwrap();
        let point = Vec3::new(2.0, 0.3, 0.1);
        let a = c.vector_potential(point, 1e-9).unwrap();
        let b = c.scaled(-3.0).vector_potential(point, 1e-9).unwrap();
        assert!((b + a * 3.0).norm() < 1e-20);
    }
}
