//! Gauss linking numbers of closed polylines.
//!
//! Each pair of straight segments contributes the exact solid angle it
//! subtends in the Gauss double integral (Klenin–Langowski form), so the sum
//! over two closed polylines is an integer up to rounding.

use crate::sources::wire::Polyline;
use crate::vec3::Vec3;

fn unit(v: Vec3) -> Vec3 {
    v.normalized().unwrap_or(Vec3::ZERO)
}

/// Signed solid-angle contribution of segment pair (p1→p2, p3→p4), divided by 4π.
fn segment_pair(p1: Vec3, p2: Vec3, p3: Vec3, p4: Vec3) -> f64 {
    let r13 = p3 - p1;
    let r14 = p4 - p1;
    let r23 = p3 - p2;
    let r24 = p4 - p2;
    let n1 = unit(r13.cross(r14));
    let n2 = unit(r14.cross(r24));
    let n3 = unit(r24.cross(r23));
    let n4 = unit(r23.cross(r13));
    let omega = n1.dot(n2).clamp(-1.0, 1.0).asin()
        + n2.dot(n3).clamp(-1.0, 1.0).asin()
        + n3.dot(n4).clamp(-1.0, 1.0).asin()
        + n4.dot(n1).clamp(-1.0, 1.0).asin();
    let orientation = (p4 - p3).cross(p2 - p1).dot(r13);
    if orientation == 0.0 {
        return 0.0;
    }
    omega * orientation.signum() / (4.0 * std::f64::consts::PI)
}

/// Gauss linking number of two closed polylines.
///
/// Sign convention: a loop circulating right-handed about the direction of
/// travel along the other curve links it positively.
pub fn gauss_linking_number(a: &Polyline, b: &Polyline) -> f64 {
    let mut total = 0.0;
    for (p1, p2) in a.segments() {
        for (p3, p4) in b.segments() {
            total += segment_pair(p1, p2, p3, p4);
        }
    }
    total
}

/// Linking number of `path` with the infinite line through `axis_point` along
/// `axis_direction`.
///
/// The line is closed by a far rectangle whose size is 10⁴ times the loop's
/// reach, so the far legs contribute at the 10⁻⁴ level at most.
pub fn linking_with_axis(path: &Polyline, axis_point: Vec3, axis_direction: Vec3) -> f64 {
    let axis = axis_direction.normalized().unwrap_or(Vec3::Z);
    let c = path.centroid();
    let z_c = (c - axis_point).dot(axis);
    let foot = axis_point + axis * z_c;
    let reach = path
        .vertices()
        .iter()
        .map(|v| (*v - foot).norm())
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let far = 1e4 * reach;
    let side = axis.any_perpendicular() * far;
    let lo = foot - axis * far;
    let hi = foot + axis * far;
    let reference = Polyline::closed(vec![lo, hi, hi + side, lo + side]).expect("rectangle has four distinct corners");
    gauss_linking_number(path, &reference)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(center: Vec3, axis: Vec3, r: f64) -> Polyline {
        Polyline::regular_polygon(center, axis, r, 48).unwrap()
    }

    #[test]
    fn hopf_link() {
        let a = ring(Vec3::ZERO, Vec3::Z, 1.0);
        let b = ring(Vec3::X, Vec3::Y, 1.0);
        let lk = gauss_linking_number(&a, &b);
        assert!((lk.abs() - 1.0).abs() < 1e-9, "lk={lk}");
        assert!((gauss_linking_number(&a, &b.reversed()) + lk).abs() < 1e-9);
        assert!((gauss_linking_number(&b, &a) - lk).abs() < 1e-9);
    }

    #[test]
    fn unlinked_rings() {
        let a = ring(Vec3::ZERO, Vec3::Z, 1.0);
        let b = ring(Vec3::new(5.0, 0.0, 0.0), Vec3::Y, 1.0);
        assert!(gauss_linking_number(&a, &b).abs() < 1e-9);
    }

    #[test]
    fn right_handed_loop_links_axis_positively() {
        let a = ring(Vec3::new(0.0, 0.0, 2.0), Vec3::Z, 0.5);
        let lk = linking_with_axis(&a, Vec3::ZERO, Vec3::Z);
        assert!((lk - 1.0).abs() < 1e-3, "lk={lk}");
        let lk = linking_with_axis(&a.reversed(), Vec3::ZERO, Vec3::Z);
        assert!((lk + 1.0).abs() < 1e-3);
    }

    #[test]
    fn loop_beside_axis_does_not_link() {
        let a = ring(Vec3::new(3.0, 0.0, 0.0), Vec3::Z, 0.5);
        assert!(linking_with_axis(&a, Vec3::ZERO, Vec3::Z).abs() < 1e-3);
    }

    #[test]
    fn double_winding_links_twice() {
        let verts: Vec<Vec3> = (0..96)
            .map(|k| {
                let phi = 4.0 * std::f64::consts::PI * k as f64 / 96.0;
                let r = 1.0 + 0.2 * (phi / 2.0).cos() * 0.0 + if k < 48 { 0.0 } else { 0.3 };
                Vec3::new(r * phi.cos(), r * phi.sin(), 0.01 * k as f64)
            })
            .collect();
        let path = Polyline::closed(verts).unwrap();
        let lk = linking_with_axis(&path, Vec3::ZERO, Vec3::Z);
        assert!((lk - 2.0).abs() < 1e-3, "lk={lk}");
    }
}
