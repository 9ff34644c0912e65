// SPDX-License-Identifier: Apache-2.0

//! Inner linearizations: lower convex envelopes of vertical rays above finite
//! epigraph point sets, and the alpha-affine minorants they induce.
//!
//! In two dimensions the envelope is the set of downward faces of the lifted
//! three-dimensional hull. Faces are found by brute force over point triples
//! with exact orientation predicates, so coplanar groups are detected exactly
//! and merged into one polygonal face before triangulation.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::functional::{AlphaConcaveFunction, AlphaParam, BaseFunction};
use crate::geometry::{
    clip_halfplane, clip_linear, convex_hull_indices, convex_polygon_chord, convex_polygon_contains,
    cross, dot, orient2d, orient3d, polygon_area, sub, ConvexSet, Point,
};
use crate::lp::{solve_standard, LpOutcome};

/// Relative tolerance for epigraph membership of input points.
pub const EPI_TOLERANCE: f64 = 1e-9;

/// Most distinct points accepted by the planar hull.
pub const MAX_PLANAR_POINTS: usize = 64;

/// A point `(x, t)` of the epigraph of a base function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EpiPoint {
    pub x: Point,
    pub t: f64,
}

impl EpiPoint {
    pub fn new(x: Point, t: f64) -> Self {
        Self { x, t }
    }
}

/// `x -> <gradient, x> + offset`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Affine {
    pub gradient: Point,
    pub offset: f64,
}

impl Affine {
    #[inline]
    pub fn value(&self, x: Point) -> f64 {
        dot(self.gradient, x) + self.offset
    }

    /// Affine interpolant of three lifted points with non-collinear projections.
    pub fn through(p: [EpiPoint; 3]) -> Self {
        let e1 = sub(p[1].x, p[0].x);
        let e2 = sub(p[2].x, p[0].x);
        let (d1, d2) = (p[1].t - p[0].t, p[2].t - p[0].t);
        let det = cross(e1, e2);
        let gradient = [(d1 * e2[1] - d2 * e1[1]) / det, (e1[0] * d2 - e2[0] * d1) / det];
        Self {
            gradient,
            offset: p[0].t - dot(gradient, p[0].x),
        }
    }

    fn through_pair(a: EpiPoint, b: EpiPoint) -> Self {
        let slope = (b.t - a.t) / (b.x[0] - a.x[0]);
        Self {
            gradient: [slope, 0.0],
            offset: a.t - slope * a.x[0],
        }
    }
}

/// One maximal face of the envelope: a convex polygon (a segment in 1D) on
/// which the function is affine.
#[derive(Debug, Clone, PartialEq)]
pub struct Face {
    /// Break-point indices of the face vertices, counterclockwise in 2D and
    /// left-to-right in 1D.
    pub vertices: Vec<usize>,
    pub affine: Affine,
}

/// A triangle (segment in 1D) of the facet triangulation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell {
    pub vertices: [Point; 3],
    pub affine: Affine,
}

#[derive(Debug, Clone, PartialEq)]
enum Shape {
    /// Full-dimensional domain with its envelope faces.
    Full { domain: Vec<Point>, faces: Vec<Face> },
    /// All projections lie on a segment `origin + s * direction`, `s in [0, 1]`
    /// (a single point when the chain has one entry).
    Degenerate {
        origin: Point,
        direction: Point,
        chain: Vec<(f64, f64)>,
    },
}

/// The piecewise-affine convex function whose epigraph is the convex hull of
/// vertical rays above a finite point set.
#[derive(Debug, Clone, PartialEq)]
pub struct InnerLinearization {
    dim: usize,
    break_points: Vec<EpiPoint>,
    shape: Shape,
}

/// Lower envelope of `points` over the base `psi`, rejecting degenerate domains.
pub fn inner_linearization(points: &[EpiPoint], psi: &BaseFunction) -> Result<InnerLinearization> {
    check_epigraph(points, psi)?;
    InnerLinearization::build(psi.dim(), points, false)
}

/// LP evaluation `min{sum l_i t_i : sum l_i = 1, l >= 0, sum l_i x_i = x}`; `+inf`
/// when `x` lies outside the convex hull of the `x_i`.
pub fn eval_linearization_lp(dim: usize, points: &[EpiPoint], x: Point) -> f64 {
    if points.is_empty() {
        return f64::INFINITY;
    }
    let scale = points
        .iter()
        .flat_map(|p| p.x.iter().take(dim).map(|c| c.abs()))
        .fold(x[0].abs().max(x[1].abs()), f64::max)
        .max(1.0);
    let mut a = vec![vec![1.0; points.len()]];
    let mut b = vec![1.0];
    for (k, xk) in x.iter().take(dim).enumerate() {
        a.push(points.iter().map(|p| p.x[k] / scale).collect());
        b.push(xk / scale);
    }
    let c: Vec<f64> = points.iter().map(|p| p.t).collect();
    match solve_standard(&a, &b, &c, 1e-12) {
        LpOutcome::Optimal { value, .. } => value,
        _ => f64::INFINITY,
    }
}

fn check_epigraph(points: &[EpiPoint], psi: &BaseFunction) -> Result<()> {
    for p in points {
        if let Some(v) = psi.value(p.x) {
            if p.t < v - EPI_TOLERANCE * (1.0 + v.abs()) {
                return Err(Error::PointBelowEpigraph {
                    x: p.x[..psi.dim()].to_vec(),
                    t: p.t,
                    psi: v,
                });
            }
        }
    }
    Ok(())
}

impl InnerLinearization {
    /// Builds the envelope without epigraph validation. Degenerate domains
    /// (a point, or a segment in the plane) are an error unless `allow_degenerate`.
    pub fn build(dim: usize, points: &[EpiPoint], allow_degenerate: bool) -> Result<Self> {
        if dim != 1 && dim != 2 {
            return Err(Error::UnsupportedDimension(dim));
        }
        if points.is_empty() {
            return Err(Error::InvalidN(0));
        }
        if points.iter().any(|p| !p.t.is_finite() || !p.x[0].is_finite() || !p.x[1].is_finite()) {
            return Err(Error::InvalidBase("epigraph points must be finite".into()));
        }
        let pts = dedup(dim, points);
        let lin = if dim == 1 {
            Self::build_line(pts)
        } else if all_collinear(&pts) {
            Self::build_degenerate(pts)
        } else {
            if pts.len() > MAX_PLANAR_POINTS {
                return Err(Error::TooManyPoints(pts.len()));
            }
            Self::build_planar(pts)
        };
        if lin.is_degenerate() && !allow_degenerate {
            return Err(Error::DegenerateDomain);
        }
        Ok(lin)
    }

    fn build_line(pts: Vec<EpiPoint>) -> Self {
        let hull = lower_chain(&pts, |p| p.x[0]);
        let break_points: Vec<EpiPoint> = hull.iter().map(|&i| pts[i]).collect();
        if break_points.len() == 1 {
            return Self {
                dim: 1,
                shape: Shape::Degenerate {
                    origin: break_points[0].x,
                    direction: [0.0, 0.0],
                    chain: vec![(0.0, break_points[0].t)],
                },
                break_points,
            };
        }
        let faces = (0..break_points.len() - 1)
            .map(|i| Face {
                vertices: vec![i, i + 1],
                affine: Affine::through_pair(break_points[i], break_points[i + 1]),
            })
            .collect();
        let domain = vec![break_points[0].x, break_points[break_points.len() - 1].x];
        Self {
            dim: 1,
            break_points,
            shape: Shape::Full { domain, faces },
        }
    }

    fn build_degenerate(pts: Vec<EpiPoint>) -> Self {
        // pts is sorted lexicographically, so the extremes of the segment are first and last
        let origin = pts[0].x;
        let direction = sub(pts[pts.len() - 1].x, origin);
        let dd = dot(direction, direction);
        let param = |p: &EpiPoint| if dd == 0.0 { 0.0 } else { dot(sub(p.x, origin), direction) / dd };
        let hull = lower_chain(&pts, param);
        let break_points: Vec<EpiPoint> = hull.iter().map(|&i| pts[i]).collect();
        let chain = break_points.iter().map(|p| (param(p), p.t)).collect();
        Self {
            dim: 2,
            break_points,
            shape: Shape::Degenerate {
                origin,
                direction,
                chain,
            },
        }
    }

    fn build_planar(pts: Vec<EpiPoint>) -> Self {
        let n = pts.len();
        let lift = |p: &EpiPoint| [p.x[0], p.x[1], p.t];
        let lifted: Vec<[f64; 3]> = pts.iter().map(lift).collect();
        let mut seen = HashSet::new();
        let mut masks = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let o = orient2d(pts[i].x, pts[j].x, pts[k].x);
                    if o == 0.0 {
                        continue;
                    }
                    let (a, b, c) = if o > 0.0 { (i, j, k) } else { (i, k, j) };
                    let mut mask: u64 = (1 << i) | (1 << j) | (1 << k);
                    if seen.contains(&mask) {
                        continue;
                    }
                    let mut lower = true;
                    for (d, ld) in lifted.iter().enumerate() {
                        if d == a || d == b || d == c {
                            continue;
                        }
                        let s = orient3d(lifted[a], lifted[b], lifted[c], *ld);
                        if s > 0.0 {
                            lower = false;
                            break;
                        }
                        if s == 0.0 {
                            mask |= 1 << d;
                        }
                    }
                    if lower && seen.insert(mask) {
                        masks.push(mask);
                    }
                    seen.insert((1 << i) | (1 << j) | (1 << k));
                }
            }
        }
        masks.sort_unstable();
        let mut faces_pts: Vec<Vec<usize>> = Vec::with_capacity(masks.len());
        for mask in masks {
            let members: Vec<usize> = (0..n).filter(|&d| mask & (1 << d) != 0).collect();
            let xy: Vec<Point> = members.iter().map(|&d| pts[d].x).collect();
            faces_pts.push(convex_hull_indices(&xy).into_iter().map(|h| members[h]).collect());
        }
        let mut used: Vec<usize> = faces_pts.iter().flatten().copied().collect();
        used.sort_unstable();
        used.dedup();
        let remap = |d: usize| used.binary_search(&d).expect("face vertex is a break point");
        let break_points: Vec<EpiPoint> = used.iter().map(|&d| pts[d]).collect();
        let faces = faces_pts
            .into_iter()
            .map(|poly| {
                let vertices: Vec<usize> = poly.iter().map(|&d| remap(d)).collect();
                let affine = best_affine(&vertices, &break_points);
                Face { vertices, affine }
            })
            .collect();
        let all: Vec<Point> = pts.iter().map(|p| p.x).collect();
        let domain = convex_hull_indices(&all).into_iter().map(|i| all[i]).collect();
        Self {
            dim: 2,
            break_points,
            shape: Shape::Full { domain, faces },
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Extreme points of the epigraph, in lexicographic order of `x`.
    pub fn break_points(&self) -> &[EpiPoint] {
        &self.break_points
    }

    pub fn is_degenerate(&self) -> bool {
        matches!(self.shape, Shape::Degenerate { .. })
    }

    /// Maximal faces of the envelope (empty for degenerate domains).
    pub fn faces(&self) -> &[Face] {
        match &self.shape {
            Shape::Full { faces, .. } => faces,
            Shape::Degenerate { .. } => &[],
        }
    }

    /// Vertices of the domain `conv{x_i}`: counterclockwise polygon in 2D,
    /// endpoints in 1D and for degenerate domains.
    pub fn domain(&self) -> Vec<Point> {
        match &self.shape {
            Shape::Full { domain, .. } => domain.clone(),
            Shape::Degenerate {
                origin, direction, ..
            } => {
                if *direction == [0.0, 0.0] {
                    vec![*origin]
                } else {
                    vec![*origin, [origin[0] + direction[0], origin[1] + direction[1]]]
                }
            }
        }
    }

    pub fn domain_set(&self) -> ConvexSet {
        match (&self.shape, self.dim) {
            (Shape::Full { domain, .. }, 1) => ConvexSet::Interval {
                lo: domain[0][0],
                hi: domain[1][0],
            },
            (Shape::Degenerate { .. }, 1) => {
                let d = self.domain();
                ConvexSet::Interval {
                    lo: d[0][0],
                    hi: d[0][0],
                }
            }
            _ => ConvexSet::Polygon(self.domain()),
        }
    }

    pub fn domain_volume(&self) -> f64 {
        match &self.shape {
            Shape::Degenerate { .. } => 0.0,
            Shape::Full { domain, .. } => {
                if self.dim == 1 {
                    domain[1][0] - domain[0][0]
                } else {
                    polygon_area(domain)
                }
            }
        }
    }

    pub fn domain_contains(&self, x: Point) -> bool {
        match &self.shape {
            Shape::Full { domain, .. } => {
                if self.dim == 1 {
                    domain[0][0] <= x[0] && x[0] <= domain[1][0]
                } else {
                    convex_polygon_contains(domain, x)
                }
            }
            Shape::Degenerate { .. } => self.degenerate_param(x).is_some(),
        }
    }

    fn degenerate_param(&self, x: Point) -> Option<f64> {
        let Shape::Degenerate {
            origin, direction, ..
        } = &self.shape
        else {
            return None;
        };
        let x = if self.dim == 1 { [x[0], 0.0] } else { x };
        if *direction == [0.0, 0.0] {
            return (x == *origin).then_some(0.0);
        }
        let end = [origin[0] + direction[0], origin[1] + direction[1]];
        if !convex_polygon_contains(&[*origin, end], x) {
            return None;
        }
        let dd = dot(*direction, *direction);
        Some((dot(sub(x, *origin), *direction) / dd).clamp(0.0, 1.0))
    }

    /// `p(x)`: the facet value inside the domain, `+inf` outside.
    pub fn eval(&self, x: Point) -> f64 {
        match &self.shape {
            Shape::Full { faces, .. } => {
                if !self.domain_contains(x) {
                    return f64::INFINITY;
                }
                if self.dim == 1 {
                    let k = self.break_points.partition_point(|p| p.x[0] < x[0]);
                    let k = k.clamp(1, self.break_points.len() - 1);
                    return faces[k - 1].affine.value([x[0], 0.0]);
                }
                faces
                    .iter()
                    .map(|f| f.affine.value(x))
                    .fold(f64::NEG_INFINITY, f64::max)
            }
            Shape::Degenerate { chain, .. } => {
                let Some(s) = self.degenerate_param(x) else {
                    return f64::INFINITY;
                };
                if chain.len() == 1 {
                    return chain[0].1;
                }
                let k = chain.partition_point(|c| c.0 < s).clamp(1, chain.len() - 1);
                let (s0, t0) = chain[k - 1];
                let (s1, t1) = chain[k];
                let w = ((s - s0) / (s1 - s0)).clamp(0.0, 1.0);
                (1.0 - w) * t0 + w * t1
            }
        }
    }

    /// Default triangulation: each face fanned from its first vertex.
    pub fn cells(&self) -> Vec<Cell> {
        self.cells_with_fan(0)
    }

    /// Triangulation with every face fanned from its `apex`-th vertex (modulo
    /// the face size). Different `apex` values give different triangulations of
    /// the same function.
    pub fn cells_with_fan(&self, apex: usize) -> Vec<Cell> {
        let mut out = Vec::new();
        for face in self.faces() {
            let v: Vec<Point> = face.vertices.iter().map(|&i| self.break_points[i].x).collect();
            if self.dim == 1 {
                out.push(Cell {
                    vertices: [v[0], v[1], v[1]],
                    affine: face.affine,
                });
                continue;
            }
            let m = v.len();
            let a = apex % m;
            for k in 1..m - 1 {
                out.push(Cell {
                    vertices: [v[a], v[(a + k) % m], v[(a + k + 1) % m]],
                    affine: face.affine,
                });
            }
        }
        out
    }

    /// `{p <= b}` as an exact descriptor.
    pub fn sublevel_set(&self, b: f64) -> ConvexSet {
        match &self.shape {
            Shape::Degenerate { .. } => {
                // only reached for zero-volume domains; report the sampled points below b
                let pts: Vec<Point> = self.break_points.iter().filter(|p| p.t <= b).map(|p| p.x).collect();
                if pts.is_empty() {
                    ConvexSet::Empty
                } else if self.dim == 1 {
                    ConvexSet::Interval {
                        lo: pts[0][0],
                        hi: pts[0][0],
                    }
                } else {
                    ConvexSet::Polygon(pts)
                }
            }
            Shape::Full { domain, faces } => {
                if self.dim == 1 {
                    let (mut lo, mut hi) = (domain[0][0], domain[1][0]);
                    for f in faces {
                        if !clip_linear(b - f.affine.offset, -f.affine.gradient[0], &mut lo, &mut hi) {
                            return ConvexSet::Empty;
                        }
                    }
                    return ConvexSet::Interval { lo, hi };
                }
                let mut poly = domain.clone();
                for f in faces {
                    poly = clip_halfplane(&poly, f.affine.gradient, b - f.affine.offset);
                    if poly.is_empty() {
                        return ConvexSet::Empty;
                    }
                }
                ConvexSet::Polygon(poly)
            }
        }
    }

    /// `{s : p(p0 + s d) <= b}`.
    pub fn chord(&self, p0: Point, d: Point, b: f64) -> Option<(f64, f64)> {
        let Shape::Full { domain, faces } = &self.shape else {
            return None;
        };
        let (mut lo, mut hi) = if self.dim == 1 {
            if d[0] == 0.0 {
                return (self.eval(p0) <= b).then_some((f64::NEG_INFINITY, f64::INFINITY));
            }
            let (a, c) = ((domain[0][0] - p0[0]) / d[0], (domain[1][0] - p0[0]) / d[0]);
            (a.min(c), a.max(c))
        } else {
            convex_polygon_chord(domain, p0, d)?
        };
        for f in faces {
            let g = if self.dim == 1 {
                [f.affine.gradient[0], 0.0]
            } else {
                f.affine.gradient
            };
            if !clip_linear(b - f.affine.value(p0), -dot(g, d), &mut lo, &mut hi) {
                return None;
            }
        }
        Some((lo, hi))
    }

    /// Minimum value and a break point attaining it.
    pub fn minimum(&self) -> (f64, Point) {
        let best = self
            .break_points
            .iter()
            .fold(self.break_points[0], |acc, p| if p.t < acc.t { *p } else { acc });
        (best.t, best.x)
    }

    pub fn to_json(&self) -> LinearizationJson {
        let coords = |p: Point| p[..self.dim].to_vec();
        LinearizationJson {
            dim: self.dim,
            degenerate: self.is_degenerate(),
            break_points: self
                .break_points
                .iter()
                .map(|p| BreakPointJson {
                    x: coords(p.x),
                    t: p.t,
                })
                .collect(),
            facets: self
                .faces()
                .iter()
                .map(|f| FacetJson {
                    vertices: f.vertices.iter().map(|&i| coords(self.break_points[i].x)).collect(),
                    gradient: coords(f.affine.gradient),
                    offset: f.affine.offset,
                })
                .collect(),
        }
    }
}

/// Extreme points of the epigraph.
pub fn break_points(p: &InnerLinearization) -> Vec<EpiPoint> {
    p.break_points().to_vec()
}

/// Facet-wise evaluation (see [`InnerLinearization::eval`]).
pub fn eval_linearization_facets(p: &InnerLinearization, x: Point) -> f64 {
    p.eval(x)
}

fn dedup(dim: usize, points: &[EpiPoint]) -> Vec<EpiPoint> {
    let mut pts: Vec<EpiPoint> = points
        .iter()
        .map(|p| EpiPoint {
            x: if dim == 1 { [p.x[0], 0.0] } else { p.x },
            t: p.t,
        })
        .collect();
    pts.sort_by(|a, b| {
        a.x[0]
            .total_cmp(&b.x[0])
            .then(a.x[1].total_cmp(&b.x[1]))
            .then(a.t.total_cmp(&b.t))
    });
    pts.dedup_by(|later, earlier| later.x == earlier.x);
    pts
}

fn all_collinear(pts: &[EpiPoint]) -> bool {
    if pts.len() < 3 {
        return true;
    }
    let a = pts[0].x;
    let b = pts[pts.len() - 1].x;
    pts.iter().all(|p| orient2d(a, b, p.x) == 0.0)
}

/// Lower hull of points sorted by `key`, as indices.
fn lower_chain(pts: &[EpiPoint], key: impl Fn(&EpiPoint) -> f64) -> Vec<usize> {
    let mut order: Vec<usize> = (0..pts.len()).collect();
    order.sort_by(|&i, &j| key(&pts[i]).total_cmp(&key(&pts[j])));
    let mut hull: Vec<usize> = Vec::with_capacity(pts.len());
    for &i in &order {
        let c = [key(&pts[i]), pts[i].t];
        while hull.len() >= 2 {
            let a = &pts[hull[hull.len() - 2]];
            let b = &pts[hull[hull.len() - 1]];
            if orient2d([key(a), a.t], [key(b), b.t], c) <= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(i);
    }
    let mut out = hull;
    out.sort_unstable();
    out
}

/// Affine map of a face from its best-conditioned vertex triangle.
fn best_affine(vertices: &[usize], pts: &[EpiPoint]) -> Affine {
    let mut best = (0, 1, 2);
    let mut area = 0.0;
    let m = vertices.len();
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                let a = cross(
                    sub(pts[vertices[j]].x, pts[vertices[i]].x),
                    sub(pts[vertices[k]].x, pts[vertices[i]].x),
                )
                .abs();
                if a > area {
                    area = a;
                    best = (i, j, k);
                }
            }
        }
    }
    Affine::through([
        pts[vertices[best.0]],
        pts[vertices[best.1]],
        pts[vertices[best.2]],
    ])
}

#[derive(Debug, Clone, Serialize)]
pub struct BreakPointJson {
    pub x: Vec<f64>,
    pub t: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct FacetJson {
    pub vertices: Vec<Vec<f64>>,
    pub gradient: Vec<f64>,
    pub offset: f64,
}

/// Serialized linearization (break points and facets).
#[derive(Debug, Clone, Serialize)]
pub struct LinearizationJson {
    pub dim: usize,
    pub degenerate: bool,
    pub break_points: Vec<BreakPointJson>,
    pub facets: Vec<FacetJson>,
}

/// The alpha-transform of an inner linearization, a minorant of its host.
#[derive(Debug, Clone)]
pub struct AlphaMinorant {
    alpha: AlphaParam,
    linearization: InnerLinearization,
    host: AlphaConcaveFunction,
}

impl AlphaMinorant {
    pub fn alpha(&self) -> AlphaParam {
        self.alpha
    }

    pub fn linearization(&self) -> &InnerLinearization {
        &self.linearization
    }

    pub fn host(&self) -> &AlphaConcaveFunction {
        &self.host
    }

    pub fn dim(&self) -> usize {
        self.linearization.dim()
    }

    pub fn break_point_count(&self) -> usize {
        self.linearization.break_points().len()
    }

    /// `(1 - alpha p(x))_+^{1/alpha}` or `exp(-p(x))`; zero off the domain.
    pub fn eval(&self, x: Point) -> f64 {
        self.alpha.value_of_base(self.linearization.eval(x))
    }

    /// Graph points `(x, q(x))` at the break points.
    pub fn hypograph_points(&self) -> Vec<(Point, f64)> {
        self.linearization
            .break_points()
            .iter()
            .map(|p| (p.x, self.alpha.value_of_base(p.t)))
            .collect()
    }
}

/// Builds the alpha-affine minorant of `f` spanned by hypograph points `(x, y)`,
/// `0 < y <= f(x)`. Collinear planar configurations give a zero-mass minorant.
pub fn alpha_minorant_from_points(f: &AlphaConcaveFunction, points: &[(Point, f64)]) -> Result<AlphaMinorant> {
    let alpha = f.alpha();
    let mut epi = Vec::with_capacity(points.len());
    for &(x, y) in points {
        let x = if f.dim() == 1 { [x[0], 0.0] } else { x };
        if !(y > 0.0) {
            return Err(Error::ZeroHeight(x[..f.dim()].to_vec()));
        }
        let fx = f.eval(x);
        if y > fx * (1.0 + EPI_TOLERANCE) {
            return Err(Error::PointAboveGraph {
                x: x[..f.dim()].to_vec(),
                y,
                fx,
            });
        }
        epi.push(EpiPoint::new(x, alpha.base_of_value(y)));
    }
    let linearization = InnerLinearization::build(f.dim(), &epi, true)?;
    Ok(AlphaMinorant {
        alpha,
        linearization,
        host: f.clone(),
    })
}

/// Wraps an already validated epigraph configuration; `host` supplies the
/// concavity parameter and is not checked against the points.
pub(crate) fn alpha_minorant_from_epigraph(host: &AlphaConcaveFunction, points: &[EpiPoint]) -> Result<AlphaMinorant> {
    let linearization = InnerLinearization::build(host.dim(), points, true)?;
    Ok(AlphaMinorant {
        alpha: host.alpha(),
        linearization,
        host: host.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(points: &[(f64, f64)]) -> InnerLinearization {
        let pts: Vec<EpiPoint> = points.iter().map(|&(x, t)| EpiPoint::new([x, 0.0], t)).collect();
        InnerLinearization::build(1, &pts, true).unwrap()
    }

    #[test]
    fn absolute_value_from_three_points() {
        let p = line(&[(-1.0, 1.0), (0.0, 0.0), (1.0, 1.0)]);
        assert_eq!(p.break_points().len(), 3);
        assert_eq!(p.eval([0.5, 0.0]), 0.5);
        assert_eq!(p.eval([2.0, 0.0]), f64::INFINITY);
        assert_eq!(p.eval([-1.0, 0.0]), 1.0);
    }

    #[test]
    fn absorbed_middle_point() {
        let p = line(&[(-1.0, 1.0), (0.0, 2.0), (1.0, 1.0)]);
        assert_eq!(p.break_points().len(), 2);
        assert_eq!(p.eval([0.0, 0.0]), 1.0);
    }

    #[test]
    fn single_point_is_degenerate() {
        let pts = [EpiPoint::new([0.0, 0.0], 0.0)];
        assert_eq!(InnerLinearization::build(1, &pts, false), Err(Error::DegenerateDomain));
        let p = InnerLinearization::build(1, &pts, true).unwrap();
        assert_eq!(p.eval([0.0, 0.0]), 0.0);
        assert_eq!(p.eval([1e-300, 0.0]), f64::INFINITY);
        assert_eq!(p.break_points().len(), 1);
    }

    #[test]
    fn duplicate_x_keeps_lower_height() {
        let p = line(&[(0.0, 3.0), (0.0, 1.0), (1.0, 1.0)]);
        assert_eq!(p.eval([0.0, 0.0]), 1.0);
        let pts = [
            EpiPoint::new([0.0, 0.0], 3.0),
            EpiPoint::new([0.0, 0.0], 1.0),
            EpiPoint::new([1.0, 0.0], 1.0),
        ];
        assert_eq!(eval_linearization_lp(1, &pts, [0.0, 0.0]), 1.0);
    }

    #[test]
    fn coplanar_square_is_one_face() {
        let pts: Vec<EpiPoint> = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0], [0.5, 0.5]]
            .iter()
            .map(|&x| EpiPoint::new(x, x[0] + 2.0 * x[1]))
            .collect();
        let p = InnerLinearization::build(2, &pts, false).unwrap();
        assert_eq!(p.faces().len(), 1);
        assert_eq!(p.break_points().len(), 4);
        assert_eq!(p.cells().len(), 2);
        assert!((p.eval([0.25, 0.5]) - 1.25).abs() < 1e-15);
    }

    #[test]
    fn pyramid_faces_and_lp_agree() {
        let pts: Vec<EpiPoint> = [[-1.0, -1.0], [1.0, -1.0], [1.0, 1.0], [-1.0, 1.0]]
            .iter()
            .map(|&x| EpiPoint::new(x, 1.0))
            .chain(std::iter::once(EpiPoint::new([0.2, 0.1], 0.0)))
            .collect();
        let p = InnerLinearization::build(2, &pts, false).unwrap();
        assert_eq!(p.faces().len(), 4);
        for x in [[0.0, 0.0], [0.5, -0.3], [-0.9, 0.95], [1.0, 1.0]] {
            let a = p.eval(x);
            let b = eval_linearization_lp(2, &pts, x);
            assert!((a - b).abs() < 1e-12, "{x:?}: {a} vs {b}");
        }
        assert_eq!(eval_linearization_lp(2, &pts, [1.5, 0.0]), f64::INFINITY);
    }

    #[test]
    fn collinear_planar_points() {
        let pts: Vec<EpiPoint> = [[0.0, 0.0], [1.0, 1.0], [2.0, 2.0]]
            .iter()
            .map(|&x| EpiPoint::new(x, (x[0] - 1.0).powi(2)))
            .collect();
        assert!(matches!(
            InnerLinearization::build(2, &pts, false),
            Err(Error::DegenerateDomain)
        ));
        let p = InnerLinearization::build(2, &pts, true).unwrap();
        assert_eq!(p.eval([0.5, 0.5]), 0.5);
        assert_eq!(p.eval([0.5, 0.6]), f64::INFINITY);
        assert_eq!(p.domain_volume(), 0.0);
    }

    #[test]
    fn sublevel_and_chord() {
        let p = line(&[(-1.0, 1.0), (0.0, 0.0), (2.0, 1.0)]);
        match p.sublevel_set(0.5) {
            ConvexSet::Interval { lo, hi } => assert_eq!((lo, hi), (-0.5, 1.0)),
            other => panic!("{other:?}"),
        }
        assert_eq!(p.chord([0.0, 0.0], [1.0, 0.0], 0.5), Some((-0.5, 1.0)));
    }
}
