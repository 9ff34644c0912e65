// SPDX-License-Identifier: Apache-2.0

//! Convex base functions `psi` with exact sublevel-set and chord queries.

use std::f64::consts::PI;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::functional::{GridFunction, RadialProfile};
use crate::geometry::{
    self, bilinear, clip_halfplane, clip_linear, convex_hull, convex_polygon_chord,
    convex_polygon_contains, polygon_area, quad_form, quadratic_sublevel, sub, ConvexSet, Point,
};
use crate::hull::InnerLinearization;

/// Volume of the unit ball in dimension 1 or 2.
pub fn unit_ball_volume(dim: usize) -> f64 {
    if dim == 1 {
        2.0
    } else {
        PI
    }
}

/// `psi(x) = (x - c)^T Q (x - c)` with `Q` positive definite.
#[derive(Debug, Clone, PartialEq)]
pub struct Quadratic {
    dim: usize,
    q: [[f64; 2]; 2],
    center: Point,
}

impl Quadratic {
    pub fn new(dim: usize, q: [[f64; 2]; 2], center: Point) -> Result<Self> {
        check_dim(dim)?;
        let (q, center) = if dim == 1 {
            ([[q[0][0], 0.0], [0.0, 0.0]], [center[0], 0.0])
        } else {
            (q, center)
        };
        let symmetric = (q[0][1] - q[1][0]).abs() <= 1e-14 * (q[0][1].abs() + q[1][0].abs() + 1.0);
        let pd = if dim == 1 {
            q[0][0] > 0.0
        } else {
            q[0][0] > 0.0 && q[0][0] * q[1][1] - q[0][1] * q[1][0] > 0.0
        };
        if !(symmetric && pd && q.iter().flatten().all(|v| v.is_finite())) {
            return Err(Error::InvalidBase(
                "quadratic form must be symmetric positive definite".into(),
            ));
        }
        Ok(Self { dim, q, center })
    }

    pub fn isotropic(dim: usize, rate: f64) -> Result<Self> {
        Self::new(dim, [[rate, 0.0], [0.0, rate]], [0.0, 0.0])
    }

    pub fn matrix(&self) -> [[f64; 2]; 2] {
        self.q
    }

    pub fn center(&self) -> Point {
        self.center
    }

    pub fn determinant(&self) -> f64 {
        if self.dim == 1 {
            self.q[0][0]
        } else {
            self.q[0][0] * self.q[1][1] - self.q[0][1] * self.q[1][0]
        }
    }

    pub fn eval(&self, x: Point) -> f64 {
        quad_form(self.q, sub(x, self.center))
    }

    pub fn sublevel(&self, b: f64) -> ConvexSet {
        if b < 0.0 {
            return ConvexSet::Empty;
        }
        if self.dim == 1 {
            let h = (b / self.q[0][0]).sqrt();
            return ConvexSet::Interval {
                lo: self.center[0] - h,
                hi: self.center[0] + h,
            };
        }
        if b == 0.0 {
            return ConvexSet::Polygon(vec![self.center]);
        }
        let s = 1.0 / b;
        ConvexSet::Ellipse {
            center: self.center,
            shape: [
                [self.q[0][0] * s, self.q[0][1] * s],
                [self.q[1][0] * s, self.q[1][1] * s],
            ],
        }
    }

    pub fn chord(&self, p0: Point, d: Point, b: f64) -> Option<(f64, f64)> {
        let y0 = sub(p0, self.center);
        let a = quad_form(self.q, d);
        let bb = 2.0 * bilinear(self.q, d, y0);
        let c = quad_form(self.q, y0) - b;
        quadratic_sublevel(a, bb, c)
    }

    /// `vol{psi <= s} = coefficient * s^exponent`.
    pub fn volume_law(&self) -> (f64, f64) {
        (
            unit_ball_volume(self.dim) / self.determinant().sqrt(),
            self.dim as f64 / 2.0,
        )
    }

    pub fn is_radial(&self) -> bool {
        self.center == [0.0, 0.0] && (self.dim == 1 || (self.q[0][1] == 0.0 && self.q[0][0] == self.q[1][1]))
    }
}

/// Positively homogeneous gauge of a cone base.
#[derive(Debug, Clone, PartialEq)]
pub enum Gauge {
    /// `max_j <g_j, y>` on the wedge `{<w_k, y> <= 0}`, `+inf` off it.
    Polyhedral { gradients: Vec<Point>, walls: Vec<Point> },
    /// `rate * |y|`.
    Euclidean { rate: f64 },
}

/// `psi(x) = gauge(x - apex)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Cone {
    dim: usize,
    gauge: Gauge,
    apex: Point,
    unit: ConvexSet,
    unit_volume: f64,
}

impl Cone {
    pub fn new(dim: usize, gauge: Gauge, apex: Point) -> Result<Self> {
        check_dim(dim)?;
        let apex = if dim == 1 { [apex[0], 0.0] } else { apex };
        let unit = match &gauge {
            Gauge::Euclidean { rate } => {
                if !(*rate > 0.0 && rate.is_finite()) {
                    return Err(Error::InvalidBase("cone rate must be positive".into()));
                }
                if dim == 1 {
                    ConvexSet::Interval {
                        lo: -1.0 / rate,
                        hi: 1.0 / rate,
                    }
                } else {
                    ConvexSet::Ellipse {
                        center: [0.0, 0.0],
                        shape: [[rate * rate, 0.0], [0.0, rate * rate]],
                    }
                }
            }
            Gauge::Polyhedral { gradients, walls } => {
                if gradients.is_empty() {
                    return Err(Error::InvalidBase("cone needs at least one gradient".into()));
                }
                let far = 1e9;
                if dim == 1 {
                    let (mut lo, mut hi) = (-far, far);
                    for g in gradients {
                        clip_linear(1.0, -g[0], &mut lo, &mut hi);
                    }
                    for w in walls {
                        clip_linear(0.0, -w[0], &mut lo, &mut hi);
                    }
                    if lo <= -far * 0.5 || hi >= far * 0.5 || lo > hi {
                        return Err(Error::InvalidBase("cone gauge is not coercive".into()));
                    }
                    ConvexSet::Interval { lo, hi }
                } else {
                    let clip = |r: f64| {
                        let mut poly = vec![[-r, -r], [r, -r], [r, r], [-r, r]];
                        for g in gradients {
                            poly = clip_halfplane(&poly, *g, 1.0);
                        }
                        for w in walls {
                            poly = clip_halfplane(&poly, *w, 0.0);
                        }
                        convex_hull(&poly)
                    };
                    let rough = clip(far);
                    if rough.len() < 3
                        || rough.iter().any(|v| v[0].abs() >= far * 0.5 || v[1].abs() >= far * 0.5)
                    {
                        return Err(Error::InvalidBase(
                            "cone gauge is not coercive or has an empty interior".into(),
                        ));
                    }
                    // second pass with a tight box so vertices carry no large-coordinate rounding
                    let r = 2.0 * rough.iter().map(|v| v[0].abs().max(v[1].abs())).fold(0.0, f64::max);
                    ConvexSet::Polygon(clip(r))
                }
            }
        };
        let unit_volume = unit.volume();
        if !(unit_volume > 0.0) {
            return Err(Error::InvalidBase("cone unit sublevel set is degenerate".into()));
        }
        Ok(Self {
            dim,
            gauge,
            apex,
            unit,
            unit_volume,
        })
    }

    pub fn gauge(&self) -> &Gauge {
        &self.gauge
    }

    pub fn apex(&self) -> Point {
        self.apex
    }

    pub fn eval(&self, x: Point) -> f64 {
        let y = sub(x, self.apex);
        match &self.gauge {
            Gauge::Euclidean { rate } => {
                if self.dim == 1 {
                    rate * y[0].abs()
                } else {
                    rate * geometry::norm(y)
                }
            }
            Gauge::Polyhedral { gradients, walls } => {
                if walls.iter().any(|w| geometry::dot(*w, y) > 0.0) {
                    return f64::INFINITY;
                }
                gradients
                    .iter()
                    .map(|g| geometry::dot(*g, y))
                    .fold(f64::NEG_INFINITY, f64::max)
            }
        }
    }

    pub fn sublevel(&self, b: f64) -> ConvexSet {
        if b < 0.0 {
            return ConvexSet::Empty;
        }
        match &self.unit {
            ConvexSet::Interval { lo, hi } => ConvexSet::Interval {
                lo: self.apex[0] + b * lo,
                hi: self.apex[0] + b * hi,
            },
            ConvexSet::Polygon(p) => {
                if b == 0.0 {
                    return ConvexSet::Polygon(vec![self.apex]);
                }
                ConvexSet::Polygon(
                    p.iter()
                        .map(|v| [self.apex[0] + b * v[0], self.apex[1] + b * v[1]])
                        .collect(),
                )
            }
            ConvexSet::Ellipse { shape, .. } => {
                if b == 0.0 {
                    return ConvexSet::Polygon(vec![self.apex]);
                }
                let s = 1.0 / (b * b);
                ConvexSet::Ellipse {
                    center: self.apex,
                    shape: [[shape[0][0] * s, 0.0], [0.0, shape[1][1] * s]],
                }
            }
            _ => unreachable!("cone unit set is an interval, polygon or disk"),
        }
    }

    pub fn chord(&self, p0: Point, d: Point, b: f64) -> Option<(f64, f64)> {
        if b < 0.0 {
            return None;
        }
        let y0 = sub(p0, self.apex);
        match &self.gauge {
            Gauge::Euclidean { rate } => {
                let r = b / rate;
                if self.dim == 1 {
                    if d[0] == 0.0 {
                        return (y0[0].abs() <= r).then_some((f64::NEG_INFINITY, f64::INFINITY));
                    }
                    let (a, c) = ((-r - y0[0]) / d[0], (r - y0[0]) / d[0]);
                    return Some((a.min(c), a.max(c)));
                }
                quadratic_sublevel(
                    geometry::dot(d, d),
                    2.0 * geometry::dot(d, y0),
                    geometry::dot(y0, y0) - r * r,
                )
            }
            Gauge::Polyhedral { gradients, walls } => {
                let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
                for g in gradients {
                    if !clip_linear(b - geometry::dot(*g, y0), -geometry::dot(*g, d), &mut lo, &mut hi) {
                        return None;
                    }
                }
                for w in walls {
                    if !clip_linear(-geometry::dot(*w, y0), -geometry::dot(*w, d), &mut lo, &mut hi) {
                        return None;
                    }
                }
                Some((lo, hi))
            }
        }
    }

    pub fn volume_law(&self) -> (f64, f64) {
        (self.unit_volume, self.dim as f64)
    }

    pub fn unit_volume(&self) -> f64 {
        self.unit_volume
    }

    pub fn is_radial(&self) -> bool {
        if self.apex != [0.0, 0.0] {
            return false;
        }
        match (&self.gauge, &self.unit) {
            (Gauge::Euclidean { .. }, _) => true,
            (Gauge::Polyhedral { .. }, ConvexSet::Interval { lo, hi }) => *lo == -*hi,
            _ => false,
        }
    }
}

/// Convex polytope given by the convex hull of its vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPolytope {
    dim: usize,
    vertices: Vec<Point>,
}

impl ConvexPolytope {
    pub fn new(dim: usize, points: &[Point]) -> Result<Self> {
        check_dim(dim)?;
        let vertices = if dim == 1 {
            let lo = points.iter().map(|p| p[0]).fold(f64::INFINITY, f64::min);
            let hi = points.iter().map(|p| p[0]).fold(f64::NEG_INFINITY, f64::max);
            if !(lo < hi) {
                return Err(Error::InvalidBase("interval must have positive length".into()));
            }
            vec![[lo, 0.0], [hi, 0.0]]
        } else {
            let hull = convex_hull(points);
            if hull.len() < 3 {
                return Err(Error::InvalidBase("polygon must have nonempty interior".into()));
            }
            hull
        };
        Ok(Self { dim, vertices })
    }

    /// Hull vertices (counterclockwise in 2D; the two endpoints in 1D).
    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn contains(&self, x: Point) -> bool {
        if self.dim == 1 {
            self.vertices[0][0] <= x[0] && x[0] <= self.vertices[1][0]
        } else {
            convex_polygon_contains(&self.vertices, x)
        }
    }

    pub fn set(&self) -> ConvexSet {
        if self.dim == 1 {
            ConvexSet::Interval {
                lo: self.vertices[0][0],
                hi: self.vertices[1][0],
            }
        } else {
            ConvexSet::Polygon(self.vertices.clone())
        }
    }

    pub fn volume(&self) -> f64 {
        if self.dim == 1 {
            self.vertices[1][0] - self.vertices[0][0]
        } else {
            polygon_area(&self.vertices)
        }
    }

    pub fn chord(&self, p0: Point, d: Point) -> Option<(f64, f64)> {
        if self.dim == 1 {
            let (lo, hi) = (self.vertices[0][0], self.vertices[1][0]);
            if d[0] == 0.0 {
                return (lo <= p0[0] && p0[0] <= hi).then_some((f64::NEG_INFINITY, f64::INFINITY));
            }
            let (a, b) = ((lo - p0[0]) / d[0], (hi - p0[0]) / d[0]);
            Some((a.min(b), a.max(b)))
        } else {
            convex_polygon_chord(&self.vertices, p0, d)
        }
    }

    pub fn is_radial(&self) -> bool {
        self.dim == 1 && self.vertices[0][0] == -self.vertices[1][0]
    }
}

/// `{x : (x - c)^T Q (x - c) <= 1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Ellipsoid {
    shape: Quadratic,
}

impl Ellipsoid {
    pub fn new(dim: usize, q: [[f64; 2]; 2], center: Point) -> Result<Self> {
        Ok(Self {
            shape: Quadratic::new(dim, q, center)?,
        })
    }

    pub fn ball(dim: usize, radius: f64, center: Point) -> Result<Self> {
        if !(radius > 0.0) {
            return Err(Error::InvalidBase("ball radius must be positive".into()));
        }
        let r = 1.0 / (radius * radius);
        Self::new(dim, [[r, 0.0], [0.0, r]], center)
    }

    pub fn form(&self) -> &Quadratic {
        &self.shape
    }

    pub fn contains(&self, x: Point) -> bool {
        self.shape.eval(x) <= 1.0
    }

    pub fn set(&self) -> ConvexSet {
        self.shape.sublevel(1.0)
    }

    pub fn volume(&self) -> f64 {
        self.shape.volume_law().0
    }

    pub fn chord(&self, p0: Point, d: Point) -> Option<(f64, f64)> {
        self.shape.chord(p0, d, 1.0)
    }

    pub fn is_radial(&self) -> bool {
        self.shape.is_radial()
    }
}

/// The convex base `psi` of an alpha-concave function.
#[derive(Debug, Clone)]
pub enum BaseFunction {
    Quadratic(Quadratic),
    Cone(Cone),
    /// `0` on the polytope, `+inf` outside.
    IndicatorOfPolytope(ConvexPolytope),
    /// `0` on the ellipsoid, `+inf` outside.
    IndicatorOfEllipsoid(Ellipsoid),
    PiecewiseAffine(Arc<InnerLinearization>),
    /// Sampled function values; the base is recovered through the alpha transform.
    GridBacked(Arc<GridFunction>),
    /// Radial profile of function values (symmetric decreasing rearrangements).
    Radial(Arc<RadialProfile>),
}

impl BaseFunction {
    pub fn dim(&self) -> usize {
        match self {
            BaseFunction::Quadratic(q) => q.dim,
            BaseFunction::Cone(c) => c.dim,
            BaseFunction::IndicatorOfPolytope(p) => p.dim,
            BaseFunction::IndicatorOfEllipsoid(e) => e.shape.dim,
            BaseFunction::PiecewiseAffine(p) => p.dim(),
            BaseFunction::GridBacked(g) => g.dim(),
            BaseFunction::Radial(r) => r.dim(),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            BaseFunction::Quadratic(_) => "quadratic",
            BaseFunction::Cone(_) => "cone",
            BaseFunction::IndicatorOfPolytope(_) => "indicator_polytope",
            BaseFunction::IndicatorOfEllipsoid(_) => "indicator_ellipsoid",
            BaseFunction::PiecewiseAffine(_) => "piecewise_affine",
            BaseFunction::GridBacked(_) => "grid",
            BaseFunction::Radial(_) => "radial",
        }
    }

    pub fn is_indicator(&self) -> bool {
        matches!(
            self,
            BaseFunction::IndicatorOfPolytope(_) | BaseFunction::IndicatorOfEllipsoid(_)
        )
    }

    /// True for kinds whose values are stored directly instead of through `psi`.
    pub fn is_value_backed(&self) -> bool {
        matches!(self, BaseFunction::GridBacked(_) | BaseFunction::Radial(_))
    }

    /// `psi(x)` for the base-backed kinds; `None` for value-backed kinds.
    pub fn value(&self, x: Point) -> Option<f64> {
        Some(match self {
            BaseFunction::Quadratic(q) => q.eval(x),
            BaseFunction::Cone(c) => c.eval(x),
            BaseFunction::IndicatorOfPolytope(p) => {
                if p.contains(x) {
                    0.0
                } else {
                    f64::INFINITY
                }
            }
            BaseFunction::IndicatorOfEllipsoid(e) => {
                if e.contains(x) {
                    0.0
                } else {
                    f64::INFINITY
                }
            }
            BaseFunction::PiecewiseAffine(p) => p.eval(x),
            BaseFunction::GridBacked(_) | BaseFunction::Radial(_) => return None,
        })
    }

    /// Exact `{psi <= b}` for base-backed kinds.
    pub fn sublevel(&self, b: f64) -> Option<ConvexSet> {
        Some(match self {
            BaseFunction::Quadratic(q) => q.sublevel(b),
            BaseFunction::Cone(c) => c.sublevel(b),
            BaseFunction::IndicatorOfPolytope(p) => {
                if b >= 0.0 {
                    p.set()
                } else {
                    ConvexSet::Empty
                }
            }
            BaseFunction::IndicatorOfEllipsoid(e) => {
                if b >= 0.0 {
                    e.set()
                } else {
                    ConvexSet::Empty
                }
            }
            BaseFunction::PiecewiseAffine(p) => p.sublevel_set(b),
            BaseFunction::GridBacked(_) | BaseFunction::Radial(_) => return None,
        })
    }

    /// Exact `{s : psi(p0 + s d) <= b}` for base-backed kinds.
    pub fn chord(&self, p0: Point, d: Point, b: f64) -> Option<Option<(f64, f64)>> {
        Some(match self {
            BaseFunction::Quadratic(q) => q.chord(p0, d, b),
            BaseFunction::Cone(c) => c.chord(p0, d, b),
            BaseFunction::IndicatorOfPolytope(p) => {
                if b >= 0.0 {
                    p.chord(p0, d)
                } else {
                    None
                }
            }
            BaseFunction::IndicatorOfEllipsoid(e) => {
                if b >= 0.0 {
                    e.chord(p0, d)
                } else {
                    None
                }
            }
            BaseFunction::PiecewiseAffine(p) => p.chord(p0, d, b),
            BaseFunction::GridBacked(_) | BaseFunction::Radial(_) => return None,
        })
    }

    /// Minimum of `psi` and a point attaining it (base-backed kinds).
    pub fn minimum(&self) -> Option<(f64, Point)> {
        Some(match self {
            BaseFunction::Quadratic(q) => (0.0, q.center),
            BaseFunction::Cone(c) => (0.0, c.apex),
            BaseFunction::IndicatorOfPolytope(p) => {
                let v = p.vertices();
                let n = v.len() as f64;
                (0.0, [v.iter().map(|p| p[0]).sum::<f64>() / n, v.iter().map(|p| p[1]).sum::<f64>() / n])
            }
            BaseFunction::IndicatorOfEllipsoid(e) => (0.0, e.shape.center),
            BaseFunction::PiecewiseAffine(p) => p.minimum(),
            BaseFunction::GridBacked(_) | BaseFunction::Radial(_) => return None,
        })
    }

    /// Spherical symmetry about the origin, decided structurally.
    pub fn is_radial(&self) -> bool {
        match self {
            BaseFunction::Quadratic(q) => q.is_radial(),
            BaseFunction::Cone(c) => c.is_radial(),
            BaseFunction::IndicatorOfPolytope(p) => p.is_radial(),
            BaseFunction::IndicatorOfEllipsoid(e) => e.is_radial(),
            BaseFunction::Radial(_) => true,
            BaseFunction::PiecewiseAffine(_) | BaseFunction::GridBacked(_) => false,
        }
    }
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 1 || dim == 2 {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension(dim))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_level_sets() {
        let q = Quadratic::new(1, [[1.0, 0.0], [0.0, 0.0]], [0.0, 0.0]).unwrap();
        match q.sublevel(1.0) {
            ConvexSet::Interval { lo, hi } => assert_eq!((lo, hi), (-1.0, 1.0)),
            other => panic!("{other:?}"),
        }
        let q2 = Quadratic::new(2, [[1.0, 0.0], [0.0, 4.0]], [0.0, 0.0]).unwrap();
        assert!((q2.sublevel(1.0).volume() - PI / 2.0).abs() < 1e-15);
        let (lo, hi) = q2.chord([0.0, 0.0], [0.0, 1.0], 1.0).unwrap();
        assert!((lo + 0.5).abs() < 1e-15 && (hi - 0.5).abs() < 1e-15);
    }

    #[test]
    fn rejects_indefinite_quadratic() {
        assert!(Quadratic::new(2, [[1.0, 2.0], [2.0, 1.0]], [0.0, 0.0]).is_err());
    }

    #[test]
    fn one_sided_cone() {
        let c = Cone::new(
            1,
            Gauge::Polyhedral {
                gradients: vec![[1.0, 0.0]],
                walls: vec![[-1.0, 0.0]],
            },
            [0.0, 0.0],
        )
        .unwrap();
        assert_eq!(c.eval([2.0, 0.0]), 2.0);
        assert_eq!(c.eval([-1.0, 0.0]), f64::INFINITY);
        assert_eq!(c.unit_volume(), 1.0);
        assert_eq!(c.chord([0.0, 0.0], [1.0, 0.0], 3.0), Some((0.0, 3.0)));
    }

    #[test]
    fn non_coercive_cone_rejected() {
        let err = Cone::new(
            2,
            Gauge::Polyhedral {
                gradients: vec![[1.0, 0.0], [-1.0, 0.0]],
                walls: vec![],
            },
            [0.0, 0.0],
        );
        assert!(err.is_err());
    }

    #[test]
    fn asymmetric_polyhedral_cone_volume() {
        // max(x, -2x, y, -y/2) <= 1 is the box [-1/2, 1] x [-2, 1]
        let c = Cone::new(
            2,
            Gauge::Polyhedral {
                gradients: vec![[1.0, 0.0], [-2.0, 0.0], [0.0, 1.0], [0.0, -0.5]],
                walls: vec![],
            },
            [0.0, 0.0],
        )
        .unwrap();
        assert!((c.unit_volume() - 4.5).abs() < 1e-9);
        assert!((c.sublevel(2.0).volume() - 18.0).abs() < 1e-8);
    }

    #[test]
    fn polytope_chord_and_containment() {
        let t = ConvexPolytope::new(2, &[[0.0, 0.0], [2.0, 0.0], [0.0, 2.0], [0.5, 0.5]]).unwrap();
        assert_eq!(t.vertices().len(), 3);
        assert!(t.contains([1.0, 1.0]));
        assert!(!t.contains([1.0, 1.0 + 1e-15]));
        assert_eq!(t.volume(), 2.0);
    }
}
