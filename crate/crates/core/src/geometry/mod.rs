//! Planar geometry kernel.
//!
//! Coordinates are plain `f64`. Two points closer than [`EPS`] are the same
//! point; angles closer than [`ANGLE_EPS`] radians are the same angle.

mod arrangement;
mod polygon;
mod sectors;

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

pub use arrangement::{Arrangement, ArrangementEdge};
pub use polygon::{
    centroid, interior_point, is_ccw, is_simple, point_in_polygon, point_on_polygon_boundary, polygon_overlap,
    segment_interior_length, signed_area, triangulate, PointLocation,
};
pub use sectors::{sector_angles, SectorAngles};

/// Point-coincidence tolerance.
pub const EPS: f64 = 1e-9;
/// Angular tolerance in radians.
pub const ANGLE_EPS: f64 = 1e-6;

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn dot(self, o: Vec2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Vec2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, o: Vec2) -> f64 {
        (self - o).norm()
    }

    /// Counterclockwise perpendicular.
    pub fn perp(self) -> Vec2 {
        Vec2::new(-self.y, self.x)
    }

    /// Bearing in `[0, 2π)`.
    pub fn bearing(self) -> f64 {
        let a = self.y.atan2(self.x);
        if a < 0.0 {
            a + std::f64::consts::TAU
        } else {
            a
        }
    }

    pub fn lerp(self, o: Vec2, t: f64) -> Vec2 {
        self + (o - self) * t
    }

    pub fn approx_eq(self, o: Vec2) -> bool {
        self.dist(o) <= EPS
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl From<[f64; 2]> for Vec2 {
    fn from([x, y]: [f64; 2]) -> Self {
        Vec2::new(x, y)
    }
}

impl From<Vec2> for [f64; 2] {
    fn from(v: Vec2) -> Self {
        [v.x, v.y]
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, s: f64) -> Vec2 {
        Vec2::new(self.x * s, self.y * s)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeometryError {
    #[error("reflection line has zero direction")]
    ZeroDirection,
    #[error("polygon is not simple (self-intersecting or degenerate)")]
    NotSimple,
}

/// Rigid motion of the plane, `p ↦ linear·p + translation`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlanarIsometry {
    /// Row-major 2×2 orthogonal matrix.
    pub linear: [[f64; 2]; 2],
    pub translation: Vec2,
}

impl Default for PlanarIsometry {
    fn default() -> Self {
        Self::IDENTITY
    }
}

impl PlanarIsometry {
    pub const IDENTITY: PlanarIsometry =
        PlanarIsometry { linear: [[1.0, 0.0], [0.0, 1.0]], translation: Vec2::ZERO };

    /// Reflection across the line through `point` with direction `dir`.
    pub fn reflect_across(point: Vec2, dir: Vec2) -> Result<Self, GeometryError> {
        let len = dir.norm();
        if len <= 0.0 || !len.is_finite() {
            return Err(GeometryError::ZeroDirection);
        }
        let (ux, uy) = (dir.x / len, dir.y / len);
        let linear = [[ux * ux - uy * uy, 2.0 * ux * uy], [2.0 * ux * uy, uy * uy - ux * ux]];
        let mut iso = PlanarIsometry { linear, translation: Vec2::ZERO };
        // Fix `point`: t = point - L·point.
        iso.translation = point - iso.apply_linear(point);
        Ok(iso)
    }

    pub fn translation(by: Vec2) -> Self {
        PlanarIsometry { translation: by, ..Self::IDENTITY }
    }

    fn apply_linear(&self, p: Vec2) -> Vec2 {
        let m = &self.linear;
        Vec2::new(m[0][0] * p.x + m[0][1] * p.y, m[1][0] * p.x + m[1][1] * p.y)
    }

    pub fn apply(&self, p: Vec2) -> Vec2 {
        self.apply_linear(p) + self.translation
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &PlanarIsometry) -> PlanarIsometry {
        let a = &self.linear;
        let b = &other.linear;
        let mut linear = [[0.0; 2]; 2];
        for (i, row) in linear.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        PlanarIsometry { linear, translation: self.apply(other.translation) }
    }

    pub fn determinant(&self) -> f64 {
        self.linear[0][0] * self.linear[1][1] - self.linear[0][1] * self.linear[1][0]
    }

    /// +1 for rotations, -1 for reflections.
    pub fn parity(&self) -> i8 {
        if self.determinant() >= 0.0 {
            1
        } else {
            -1
        }
    }

    pub fn is_orthogonal(&self, tol: f64) -> bool {
        let m = &self.linear;
        let c0 = m[0][0] * m[0][0] + m[1][0] * m[1][0];
        let c1 = m[0][1] * m[0][1] + m[1][1] * m[1][1];
        let d = m[0][0] * m[0][1] + m[1][0] * m[1][1];
        (c0 - 1.0).abs() <= tol && (c1 - 1.0).abs() <= tol && d.abs() <= tol
    }

    pub fn approx_eq(&self, other: &PlanarIsometry, tol: f64) -> bool {
        (0..2).all(|i| (0..2).all(|j| (self.linear[i][j] - other.linear[i][j]).abs() <= tol))
            && self.translation.dist(other.translation) <= tol
    }
}

/// Reflection across the line through `point` along `dir`.
pub fn reflect_across(point: Vec2, dir: Vec2) -> Result<PlanarIsometry, GeometryError> {
    PlanarIsometry::reflect_across(point, dir)
}

/// Distance from `p` to the closed segment `a`–`b`, with the clamped parameter.
pub fn point_segment_distance(p: Vec2, a: Vec2, b: Vec2) -> (f64, f64) {
    let ab = b - a;
    let len2 = ab.dot(ab);
    if len2 == 0.0 {
        return (p.dist(a), 0.0);
    }
    let t = ((p - a).dot(ab) / len2).clamp(0.0, 1.0);
    (p.dist(a + ab * t), t)
}

/// Proper or touching intersection point of two segments (non-parallel only).
pub fn segment_intersection(a0: Vec2, a1: Vec2, b0: Vec2, b1: Vec2) -> Option<Vec2> {
    let r = a1 - a0;
    let s = b1 - b0;
    let denom = r.cross(s);
    let scale = r.norm() * s.norm();
    if denom.abs() <= 1e-12 * scale.max(f64::MIN_POSITIVE) {
        return None;
    }
    let qp = b0 - a0;
    let t = qp.cross(s) / denom;
    let u = qp.cross(r) / denom;
    let ta = EPS / r.norm();
    let tb = EPS / s.norm();
    if t < -ta || t > 1.0 + ta || u < -tb || u > 1.0 + tb {
        return None;
    }
    Some(a0 + r * t.clamp(0.0, 1.0))
}

/// Length of the collinear overlap of two segments (0 when not collinear).
pub fn collinear_overlap(a0: Vec2, a1: Vec2, b0: Vec2, b1: Vec2) -> Option<(Vec2, Vec2)> {
    let r = a1 - a0;
    let len = r.norm();
    if len <= EPS {
        return None;
    }
    let u = r * (1.0 / len);
    let dist = |p: Vec2| (p - a0).cross(u).abs();
    if dist(b0) > EPS || dist(b1) > EPS {
        return None;
    }
    let t0 = (b0 - a0).dot(u);
    let t1 = (b1 - a0).dot(u);
    let lo = t0.min(t1).max(0.0);
    let hi = t0.max(t1).min(len);
    if hi - lo > EPS {
        Some((a0 + u * lo, a0 + u * hi))
    } else {
        None
    }
}
