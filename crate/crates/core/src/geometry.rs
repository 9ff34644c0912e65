// SPDX-License-Identifier: Apache-2.0

//! Planar geometry used throughout the crate.
//!
//! Points are stored as `[f64; 2]` in both supported dimensions; one-dimensional
//! points keep their second coordinate at zero. Orientation tests go through the
//! adaptive-precision predicates of the `robust` crate so that hull and
//! point-location decisions are exact for the given floating-point inputs.

use std::sync::Arc;

use robust::{Coord, Coord3D};

use crate::functional::GridFunction;

pub type Point = [f64; 2];

pub const ORIGIN: Point = [0.0, 0.0];

#[inline]
pub fn add(a: Point, b: Point) -> Point {
    [a[0] + b[0], a[1] + b[1]]
}

#[inline]
pub fn sub(a: Point, b: Point) -> Point {
    [a[0] - b[0], a[1] - b[1]]
}

#[inline]
pub fn scale(a: Point, s: f64) -> Point {
    [a[0] * s, a[1] * s]
}

#[inline]
pub fn dot(a: Point, b: Point) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

#[inline]
pub fn cross(a: Point, b: Point) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

#[inline]
pub fn norm(a: Point) -> f64 {
    a[0].hypot(a[1])
}

/// Builds a point from a coordinate slice of length 1 or 2.
pub fn point_from_slice(coords: &[f64]) -> Point {
    match coords.len() {
        0 => ORIGIN,
        1 => [coords[0], 0.0],
        _ => [coords[0], coords[1]],
    }
}

pub fn point_to_vec(p: Point, dim: usize) -> Vec<f64> {
    p[..dim].to_vec()
}

/// Positive when `a`, `b`, `c` turn counterclockwise; exact sign.
#[inline]
pub fn orient2d(a: Point, b: Point, c: Point) -> f64 {
    robust::orient2d(
        Coord { x: a[0], y: a[1] },
        Coord { x: b[0], y: b[1] },
        Coord { x: c[0], y: c[1] },
    )
}

/// Positive when `d` lies below the plane through `a`, `b`, `c` (taken counterclockwise
/// when viewed from above); exact sign.
#[inline]
pub fn orient3d(a: [f64; 3], b: [f64; 3], c: [f64; 3], d: [f64; 3]) -> f64 {
    let p = |v: [f64; 3]| Coord3D {
        x: v[0],
        y: v[1],
        z: v[2],
    };
    robust::orient3d(p(a), p(b), p(c), p(d))
}

/// Strict convex hull (collinear boundary points dropped), counterclockwise,
/// starting from the lexicographically smallest point. Returns indices.
pub fn convex_hull_indices(points: &[Point]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..points.len()).collect();
    idx.sort_by(|&i, &j| {
        points[i][0]
            .total_cmp(&points[j][0])
            .then(points[i][1].total_cmp(&points[j][1]))
    });
    idx.dedup_by(|a, b| points[*a] == points[*b]);
    if idx.len() < 3 {
        return idx;
    }
    let mut lower: Vec<usize> = Vec::with_capacity(idx.len());
    for &i in &idx {
        while lower.len() >= 2
            && orient2d(
                points[lower[lower.len() - 2]],
                points[lower[lower.len() - 1]],
                points[i],
            ) <= 0.0
        {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::with_capacity(idx.len());
    for &i in idx.iter().rev() {
        while upper.len() >= 2
            && orient2d(
                points[upper[upper.len() - 2]],
                points[upper[upper.len() - 1]],
                points[i],
            ) <= 0.0
        {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

pub fn convex_hull(points: &[Point]) -> Vec<Point> {
    convex_hull_indices(points)
        .into_iter()
        .map(|i| points[i])
        .collect()
}

/// Signed shoelace area (positive for counterclockwise polygons).
pub fn polygon_signed_area(poly: &[Point]) -> f64 {
    if poly.len() < 3 {
        return 0.0;
    }
    let mut acc = 0.0;
    for i in 0..poly.len() {
        let j = (i + 1) % poly.len();
        acc += cross(poly[i], poly[j]);
    }
    0.5 * acc
}

pub fn polygon_area(poly: &[Point]) -> f64 {
    polygon_signed_area(poly).abs()
}

/// Sutherland–Hodgman clip of a convex polygon to the half-plane `<normal, x> <= offset`.
pub fn clip_halfplane(poly: &[Point], normal: Point, offset: f64) -> Vec<Point> {
    let n = poly.len();
    if n == 0 {
        return Vec::new();
    }
    let side = |p: Point| dot(normal, p) - offset;
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..n {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        let (sa, sb) = (side(a), side(b));
        if sa <= 0.0 {
            out.push(a);
        }
        if (sa < 0.0 && sb > 0.0) || (sa > 0.0 && sb < 0.0) {
            let lambda = sa / (sa - sb);
            out.push(add(a, scale(sub(b, a), lambda)));
        }
    }
    out
}

/// Closed containment test for a counterclockwise convex polygon, exact.
pub fn convex_polygon_contains(poly: &[Point], x: Point) -> bool {
    match poly.len() {
        0 => false,
        1 => poly[0] == x,
        2 => {
            orient2d(poly[0], poly[1], x) == 0.0
                && dot(sub(x, poly[0]), sub(poly[1], poly[0])) >= 0.0
                && dot(sub(x, poly[1]), sub(poly[0], poly[1])) >= 0.0
        }
        n => (0..n).all(|i| orient2d(poly[i], poly[(i + 1) % n], x) >= 0.0),
    }
}

/// Parameter interval `{s : p0 + s d in poly}` for a counterclockwise convex polygon.
pub fn convex_polygon_chord(poly: &[Point], p0: Point, d: Point) -> Option<(f64, f64)> {
    if poly.len() < 3 {
        return None;
    }
    let mut lo = f64::NEG_INFINITY;
    let mut hi = f64::INFINITY;
    for i in 0..poly.len() {
        let a = poly[i];
        let e = sub(poly[(i + 1) % poly.len()], a);
        // inside: cross(e, x - a) >= 0
        let c0 = cross(e, sub(p0, a));
        let c1 = cross(e, d);
        if !clip_linear(c0, c1, &mut lo, &mut hi) {
            return None;
        }
    }
    (lo <= hi).then_some((lo, hi))
}

/// Intersects `[lo, hi]` with `{s : c0 + s c1 >= 0}`; false when it becomes empty.
pub(crate) fn clip_linear(c0: f64, c1: f64, lo: &mut f64, hi: &mut f64) -> bool {
    if c1 == 0.0 {
        return c0 >= 0.0;
    }
    let s = -c0 / c1;
    if c1 > 0.0 {
        *lo = lo.max(s);
    } else {
        *hi = hi.min(s);
    }
    *lo <= *hi
}

/// Real roots interval of `a s^2 + b s + c <= 0` for `a > 0`.
pub(crate) fn quadratic_sublevel(a: f64, b: f64, c: f64) -> Option<(f64, f64)> {
    if a <= 0.0 {
        if b == 0.0 {
            return (c <= 0.0).then_some((f64::NEG_INFINITY, f64::INFINITY));
        }
        return None;
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return None;
    }
    let sq = disc.sqrt();
    // numerically stable pair of roots
    let q = -0.5 * (b + b.signum() * sq);
    let (r1, r2) = if q == 0.0 {
        (0.0, 0.0)
    } else {
        (q / a, c / q)
    };
    Some((r1.min(r2), r1.max(r2)))
}

/// Inverse of a symmetric 2x2 matrix.
pub(crate) fn inverse_sym2(m: [[f64; 2]; 2]) -> Option<[[f64; 2]; 2]> {
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    if !(det.is_finite() && det != 0.0) {
        return None;
    }
    Some([
        [m[1][1] / det, -m[0][1] / det],
        [-m[1][0] / det, m[0][0] / det],
    ])
}

pub(crate) fn quad_form(m: [[f64; 2]; 2], v: Point) -> f64 {
    v[0] * (m[0][0] * v[0] + m[0][1] * v[1]) + v[1] * (m[1][0] * v[0] + m[1][1] * v[1])
}

pub(crate) fn bilinear(m: [[f64; 2]; 2], a: Point, b: Point) -> f64 {
    a[0] * (m[0][0] * b[0] + m[0][1] * b[1]) + a[1] * (m[1][0] * b[0] + m[1][1] * b[1])
}

/// Axis-aligned bounding box `(lo, hi)`.
pub type BoundingBox = (Point, Point);

/// Exact descriptor of a convex set in dimension 1 or 2.
#[derive(Debug, Clone, PartialEq)]
pub enum ConvexSet {
    Empty,
    /// Closed interval of the real line (one-dimensional sets).
    Interval { lo: f64, hi: f64 },
    /// Counterclockwise convex polygon; fewer than three vertices means a
    /// lower-dimensional set of zero area.
    Polygon(Vec<Point>),
    /// `{x : (x - center)^T shape (x - center) <= 1}` with `shape` positive definite.
    Ellipse { center: Point, shape: [[f64; 2]; 2] },
    /// Nodes of a grid function whose value is at least `level`.
    GridMask { grid: Arc<GridFunction>, level: f64 },
}

impl ConvexSet {
    pub fn is_empty(&self) -> bool {
        match self {
            ConvexSet::Empty => true,
            ConvexSet::Interval { lo, hi } => lo > hi,
            ConvexSet::Polygon(p) => p.is_empty(),
            ConvexSet::Ellipse { .. } => false,
            ConvexSet::GridMask { grid, level } => grid.count_at_least(*level) == 0,
        }
    }

    /// Lebesgue measure in the ambient dimension.
    pub fn volume(&self) -> f64 {
        match self {
            ConvexSet::Empty => 0.0,
            ConvexSet::Interval { lo, hi } => (hi - lo).max(0.0),
            ConvexSet::Polygon(p) => polygon_area(p),
            ConvexSet::Ellipse { shape, .. } => {
                let det = shape[0][0] * shape[1][1] - shape[0][1] * shape[1][0];
                std::f64::consts::PI / det.sqrt()
            }
            ConvexSet::GridMask { grid, level } => {
                grid.count_at_least(*level) as f64 * grid.cell_volume()
            }
        }
    }

    /// A-posteriori error of [`ConvexSet::volume`]; zero for exact descriptors.
    pub fn volume_error(&self) -> f64 {
        match self {
            ConvexSet::GridMask { grid, level } => grid.mask_boundary_volume(*level),
            _ => 0.0,
        }
    }

    pub fn contains(&self, x: Point) -> bool {
        match self {
            ConvexSet::Empty => false,
            ConvexSet::Interval { lo, hi } => *lo <= x[0] && x[0] <= *hi,
            ConvexSet::Polygon(p) => convex_polygon_contains(p, x),
            ConvexSet::Ellipse { center, shape } => quad_form(*shape, sub(x, *center)) <= 1.0,
            ConvexSet::GridMask { grid, level } => grid.eval(x) >= *level,
        }
    }

    pub fn bounding_box(&self) -> Option<BoundingBox> {
        match self {
            ConvexSet::Empty => None,
            ConvexSet::Interval { lo, hi } => (lo <= hi).then_some(([*lo, 0.0], [*hi, 0.0])),
            ConvexSet::Polygon(p) => {
                if p.is_empty() {
                    return None;
                }
                let mut lo = p[0];
                let mut hi = p[0];
                for v in p {
                    lo = [lo[0].min(v[0]), lo[1].min(v[1])];
                    hi = [hi[0].max(v[0]), hi[1].max(v[1])];
                }
                Some((lo, hi))
            }
            ConvexSet::Ellipse { center, shape } => {
                let inv = inverse_sym2(*shape)?;
                let hx = inv[0][0].sqrt();
                let hy = inv[1][1].sqrt();
                Some((
                    [center[0] - hx, center[1] - hy],
                    [center[0] + hx, center[1] + hy],
                ))
            }
            ConvexSet::GridMask { grid, level } => grid.mask_bounding_box(*level),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orient3d_sign_convention() {
        let a = [0.0, 0.0, 0.0];
        let b = [1.0, 0.0, 0.0];
        let c = [0.0, 1.0, 0.0];
        assert!(orient3d(a, b, c, [0.2, 0.2, 1.0]) < 0.0);
        assert!(orient3d(a, b, c, [0.2, 0.2, -1.0]) > 0.0);
        assert_eq!(orient3d(a, b, c, [5.0, -3.0, 0.0]), 0.0);
    }

    #[test]
    fn hull_drops_collinear_and_interior_points() {
        let pts = [
            [0.0, 0.0],
            [1.0, 0.0],
            [2.0, 0.0],
            [2.0, 2.0],
            [0.0, 2.0],
            [1.0, 1.0],
        ];
        let hull = convex_hull(&pts);
        assert_eq!(hull, vec![[0.0, 0.0], [2.0, 0.0], [2.0, 2.0], [0.0, 2.0]]);
        assert_eq!(polygon_area(&hull), 4.0);
    }

    #[test]
    fn clipping_a_square_by_a_diagonal() {
        let sq = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]];
        let half = clip_halfplane(&sq, [1.0, 1.0], 1.0);
        assert!((polygon_area(&half) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn chord_through_polygon() {
        let sq = [[-1.0, -1.0], [1.0, -1.0], [1.0, 1.0], [-1.0, 1.0]];
        let (lo, hi) = convex_polygon_chord(&sq, [0.0, 0.5], [1.0, 0.0]).unwrap();
        assert_eq!((lo, hi), (-1.0, 1.0));
        assert!(convex_polygon_chord(&sq, [0.0, 1.5], [1.0, 0.0]).is_none());
    }

    #[test]
    fn stable_quadratic_roots() {
        let (lo, hi) = quadratic_sublevel(1.0, 0.0, -4.0).unwrap();
        assert_eq!((lo, hi), (-2.0, 2.0));
        let (lo, hi) = quadratic_sublevel(1.0, -1e8, 1.0).unwrap();
        assert!((lo - 1e-8).abs() < 1e-20 && (hi - 1e8).abs() < 1e-6);
    }
}
