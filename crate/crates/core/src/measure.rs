// SPDX-License-Identifier: Apache-2.0

//! Total masses, exact integrals of alpha-affine pieces, level-set volumes and
//! `L^p` distances.
//!
//! The integral of `F(l(x))` over a simplex with affine `l` only depends on the
//! values of `l` at the vertices: it is the simplex volume times `1!` (segment)
//! or `2!` (triangle) times the divided difference of an antiderivative of
//! `F` of the matching order. For `F(s) = (1 - alpha s)^{1/alpha}` the divided
//! differences are taken in `w = 1 - alpha s`, relative to the vertex where `F`
//! is largest, which keeps every case (including the logarithmic ones at
//! `alpha = -1` and `alpha = -1/2`) finite. Clustered vertex values switch to a
//! Taylor expansion of the divided difference.

use serde::Serialize;
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::functional::{pairwise_sum, AlphaConcaveFunction, AlphaParam, BaseFunction, GridFunction};
use crate::geometry::{clip_halfplane, cross, polygon_area, sub, Point};
use crate::hull::{Affine, AlphaMinorant, InnerLinearization};
use crate::quadrature::integrate;

/// Spread of `log F` below which divided differences use a Taylor expansion.
pub const TAYLOR_SWITCH: f64 = 1e-6;

/// Relative error attached to closed-form results.
pub const EXACT_REL_ERROR: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MassMethod {
    Exact,
    Quadrature,
    LayerCake,
}

/// A mass with its error bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MassResult {
    pub value: f64,
    pub error_bound: f64,
    pub method: MassMethod,
}

impl MassResult {
    pub fn exact(value: f64) -> Self {
        Self {
            value,
            error_bound: EXACT_REL_ERROR * value.abs(),
            method: MassMethod::Exact,
        }
    }
}

/// A segment (1D) or triangle (2D).
#[derive(Debug, Clone, PartialEq)]
pub struct Simplex {
    dim: usize,
    vertices: [Point; 3],
}

impl Simplex {
    pub fn new(dim: usize, vertices: &[Point]) -> Result<Self> {
        if dim != 1 && dim != 2 {
            return Err(Error::UnsupportedDimension(dim));
        }
        if vertices.len() != dim + 1 {
            return Err(Error::DimensionMismatch {
                expected: dim + 1,
                got: vertices.len(),
            });
        }
        let mut v = [[0.0; 2]; 3];
        for (slot, p) in v.iter_mut().zip(vertices) {
            *slot = if dim == 1 { [p[0], 0.0] } else { *p };
        }
        if dim == 1 {
            v[2] = v[1];
        }
        Ok(Self { dim, vertices: v })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices[..self.dim + 1]
    }

    pub fn volume(&self) -> f64 {
        if self.dim == 1 {
            (self.vertices[1][0] - self.vertices[0][0]).abs()
        } else {
            0.5 * cross(sub(self.vertices[1], self.vertices[0]), sub(self.vertices[2], self.vertices[0])).abs()
        }
    }
}

/// `expm1(g l) / g`, continued by `l` at `g = 0`.
fn e_pow(g: f64, l: f64) -> f64 {
    if g == 0.0 {
        l
    } else {
        (g * l).exp_m1() / g
    }
}

/// Falling factorial `b (b - 1) ... (b - k + 1)`.
fn falling(b: f64, k: usize) -> f64 {
    (0..k).map(|i| b - i as f64).product()
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

/// Complete homogeneous symmetric polynomial of degree `k`.
fn h_k(y: &[f64], k: usize) -> f64 {
    match y.len() {
        2 => (0..=k).map(|i| y[0].powi(i as i32) * y[1].powi((k - i) as i32)).sum(),
        _ => {
            let mut s = 0.0;
            for i in 0..=k {
                for j in 0..=k - i {
                    s += y[0].powi(i as i32) * y[1].powi(j as i32) * y[2].powi((k - i - j) as i32);
                }
            }
            s
        }
    }
}

/// Integrand family in its working variable `y`, with `G'' = F`, normalized
/// so that the reference vertex sits at `y = 0` (exponential) or `y = 1` (power).
#[derive(Debug, Clone, Copy)]
enum Kernel {
    /// `F = exp(-y)`, `y = s - s_min`.
    Exp,
    /// `F = y^beta`, `y = w / w_ref`.
    Power { beta: f64 },
}

impl Kernel {
    fn g(self, y: f64) -> f64 {
        match self {
            Kernel::Exp => (-y).exp_m1() + y,
            Kernel::Power { beta } => {
                let l = y.ln();
                let gamma = beta + 1.0;
                if gamma == 0.0 {
                    y * l - l.exp_m1()
                } else {
                    (e_pow(gamma + 1.0, l) - l.exp_m1()) / gamma
                }
            }
        }
    }

    /// `m`-th derivative of `G`, `m >= 1`.
    fn deriv(self, m: usize, y: f64) -> f64 {
        match self {
            Kernel::Exp => {
                if m == 1 {
                    -(-y).exp_m1()
                } else if m.is_multiple_of(2) {
                    (-y).exp()
                } else {
                    -(-y).exp()
                }
            }
            Kernel::Power { beta } => {
                if m == 1 {
                    e_pow(beta + 1.0, y.ln())
                } else {
                    falling(beta, m - 2) * y.powf(beta - (m - 2) as f64)
                }
            }
        }
    }

    /// Spread of `log F` between two working values.
    fn spread(self, a: f64, b: f64) -> f64 {
        match self {
            Kernel::Exp => (b - a).abs(),
            Kernel::Power { beta } => beta.abs().max(1.0) * (b / a).ln().abs(),
        }
    }

    fn taylor(self, order: usize, y: &[f64]) -> f64 {
        let c = y.iter().sum::<f64>() / y.len() as f64;
        let shifted: Vec<f64> = y.iter().map(|v| v - c).collect();
        (0..6)
            .map(|k| self.deriv(order + k, c) / factorial(order + k) * h_k(&shifted, k))
            .sum()
    }

    /// `G[a, b]`.
    fn first_dd(self, a: f64, b: f64) -> f64 {
        if a == b {
            return self.deriv(1, a);
        }
        if self.spread(a, b) < TAYLOR_SWITCH {
            return self.taylor(1, &[a, b]);
        }
        if let Kernel::Power { beta } = self {
            let (lo, hi) = (a.min(b), a.max(b));
            if beta > 0.0 && (lo < 0.5 * hi || hi < 0.5) {
                // near w = 0 the values of G agree to many digits; use the
                // mean of G' = (x^gamma - 1) / gamma instead
                let gamma = beta + 1.0;
                let d = (hi - lo) / hi;
                let p = hi.powf(gamma) * -((gamma + 1.0) * (-d).ln_1p()).exp_m1() / d;
                return (p / (gamma + 1.0) - 1.0) / gamma;
            }
        }
        (self.g(b) - self.g(a)) / (b - a)
    }

    /// `G[y0, y1, y2]`.
    fn second_dd(self, mut y: [f64; 3]) -> f64 {
        y.sort_by(f64::total_cmp);
        if y[0] == y[2] {
            return 0.5 * self.deriv(2, y[0]);
        }
        if self.spread(y[0], y[2]) < TAYLOR_SWITCH {
            return self.taylor(2, &y);
        }
        (self.first_dd(y[1], y[2]) - self.first_dd(y[0], y[1])) / (y[2] - y[0])
    }

    /// Mean of `F` between two working values.
    fn mean(self, a: f64, b: f64) -> f64 {
        match self {
            Kernel::Exp => {
                let d = (b - a).abs();
                let base = (-a.min(b)).exp();
                if d == 0.0 {
                    base
                } else {
                    base * -(-d).exp_m1() / d
                }
            }
            Kernel::Power { beta } => {
                // reference value 1 is one of the two
                let other = if a == 1.0 { b } else { a };
                let l = other.ln();
                if l == 0.0 {
                    1.0
                } else {
                    e_pow(beta + 1.0, l) / l.exp_m1()
                }
            }
        }
    }
}

/// Working values of `F(s_i)`: the kernel, the scale factor `F(reference)`
/// and the normalized coordinates.
fn normalize(alpha: f64, s: &[f64]) -> Result<(Kernel, f64, Vec<f64>)> {
    if alpha == 0.0 {
        let m = s.iter().copied().fold(f64::INFINITY, f64::min);
        return Ok((Kernel::Exp, (-m).exp(), s.iter().map(|v| v - m).collect()));
    }
    let beta = 1.0 / alpha;
    let w: Vec<f64> = s.iter().map(|v| (1.0 - alpha * v).max(0.0)).collect();
    if alpha < 0.0 && w.iter().any(|v| *v <= 0.0) {
        return Err(Error::InvalidBase(format!(
            "affine piece leaves the domain of the alpha = {alpha} transform"
        )));
    }
    let reference = if beta > 0.0 {
        w.iter().copied().fold(0.0, f64::max)
    } else {
        w.iter().copied().fold(f64::INFINITY, f64::min)
    };
    if reference == 0.0 {
        return Ok((Kernel::Power { beta }, 0.0, vec![1.0; s.len()]));
    }
    Ok((
        Kernel::Power { beta },
        reference.powf(beta),
        w.iter().map(|v| v / reference).collect(),
    ))
}

fn triangle_area(v: &[Point; 3]) -> f64 {
    0.5 * cross(sub(v[1], v[0]), sub(v[2], v[0])).abs()
}

fn integrate_triangle_exact(alpha: f64, v: [Point; 3], affine: &Affine) -> Result<f64> {
    let area = triangle_area(&v);
    if area == 0.0 {
        return Ok(0.0);
    }
    let s = [affine.value(v[0]), affine.value(v[1]), affine.value(v[2])];
    let (kernel, scale, y) = normalize(alpha, &s)?;
    if scale == 0.0 {
        return Ok(0.0);
    }
    Ok(2.0 * area * scale * kernel.second_dd([y[0], y[1], y[2]]))
}

fn integrate_segment_exact(alpha: f64, a: f64, b: f64, affine: &Affine) -> Result<f64> {
    let len = (b - a).abs();
    if len == 0.0 {
        return Ok(0.0);
    }
    let s = [affine.value([a, 0.0]), affine.value([b, 0.0])];
    let (kernel, scale, y) = normalize(alpha, &s)?;
    if scale == 0.0 {
        return Ok(0.0);
    }
    Ok(len * scale * kernel.mean(y[0], y[1]))
}

/// `∫_simplex F(l(x)) dx` with `F` the alpha transform, in closed form.
pub fn mass_affine_piece(alpha: AlphaParam, simplex: &Simplex, affine: &Affine) -> Result<MassResult> {
    if !(simplex.volume() > 0.0) {
        return Err(Error::DegenerateSimplex);
    }
    let value = piece_value(alpha, simplex.dim, &simplex.vertices, affine)?;
    Ok(MassResult::exact(value))
}

fn piece_value(alpha: AlphaParam, dim: usize, v: &[Point; 3], affine: &Affine) -> Result<f64> {
    // F vanishes where l exceeds `cut`
    let (a, cut) = match alpha {
        AlphaParam::PosInf => (f64::INFINITY, 0.0),
        AlphaParam::Finite(a) if a > 0.0 => (a, 1.0 / a),
        AlphaParam::Finite(a) => (a, f64::INFINITY),
    };
    if dim == 1 {
        let (mut lo, mut hi) = (v[0][0].min(v[1][0]), v[0][0].max(v[1][0]));
        if cut.is_finite() {
            let g = affine.gradient[0];
            // keep g x + offset <= cut
            if !crate::geometry::clip_linear(cut - affine.offset, -g, &mut lo, &mut hi) {
                return Ok(0.0);
            }
        }
        if a.is_infinite() {
            return Ok(hi - lo);
        }
        return integrate_segment_exact(a, lo, hi, affine);
    }
    if !cut.is_finite() {
        return integrate_triangle_exact(a, *v, affine);
    }
    let poly = clip_halfplane(&v[..], affine.gradient, cut - affine.offset);
    if poly.len() < 3 {
        return Ok(0.0);
    }
    if a.is_infinite() {
        return Ok(polygon_area(&poly));
    }
    let parts: Result<Vec<f64>> = (1..poly.len() - 1)
        .map(|k| integrate_triangle_exact(a, [poly[0], poly[k], poly[k + 1]], affine))
        .collect();
    Ok(parts?.iter().sum())
}

/// Mass of the alpha transform of `p` over its domain, summing the cells of
/// the triangulation fanned from `apex` in deterministic pairwise order.
pub fn linearization_mass(alpha: AlphaParam, p: &InnerLinearization, apex: usize) -> Result<MassResult> {
    if p.is_degenerate() {
        return Ok(MassResult::exact(0.0));
    }
    let cells = p.cells_with_fan(apex);
    let values: Result<Vec<f64>> = cells
        .iter()
        .map(|c| piece_value(alpha, p.dim(), &c.vertices, &c.affine))
        .collect();
    let values = values?;
    let value = pairwise_sum(&values);
    Ok(MassResult {
        value,
        error_bound: EXACT_REL_ERROR * value.abs() * (1.0 + values.len() as f64).sqrt(),
        method: MassMethod::Exact,
    })
}

/// `J(q)` for an alpha-affine minorant (zero on degenerate domains).
pub fn minorant_mass(q: &AlphaMinorant) -> MassResult {
    linearization_mass(q.alpha(), q.linearization(), 0)
        .expect("minorant pieces stay inside the transform domain")
}

/// `Beta(a, b)` through log-gamma.
pub fn beta_fn(a: f64, b: f64) -> f64 {
    (ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)).exp()
}

/// `∫ F(psi)` for `vol{psi <= s} = c s^k`.
fn homogeneous_mass(alpha: AlphaParam, c: f64, k: f64) -> Result<f64> {
    match alpha {
        AlphaParam::PosInf => Err(Error::InvalidAlpha("alpha = inf needs a compact kind".into())),
        AlphaParam::Finite(0.0) => Ok(c * ln_gamma(k + 1.0).exp()),
        AlphaParam::Finite(a) if a > 0.0 => Ok(c * k * a.powf(-k) * beta_fn(k, 1.0 / a + 1.0)),
        AlphaParam::Finite(a) => {
            let b = -a;
            if !(1.0 / b > k) {
                return Err(Error::NonIntegrable(format!("alpha = {a} with growth exponent {k}")));
            }
            Ok(c * k * b.powf(-k) * beta_fn(k, 1.0 / b - k))
        }
    }
}

/// `J(f)`: closed form for catalog kinds, exact for piecewise-affine and radial
/// kinds, box-rule quadrature for grids.
pub fn total_mass(f: &AlphaConcaveFunction) -> MassResult {
    let alpha = f.alpha();
    match f.base() {
        BaseFunction::Quadratic(q) => {
            let (c, k) = q.volume_law();
            MassResult::exact(homogeneous_mass(alpha, c, k).expect("checked at construction"))
        }
        BaseFunction::Cone(cone) => {
            let (c, k) = cone.volume_law();
            MassResult::exact(homogeneous_mass(alpha, c, k).expect("checked at construction"))
        }
        BaseFunction::IndicatorOfPolytope(p) => MassResult::exact(p.volume()),
        BaseFunction::IndicatorOfEllipsoid(e) => MassResult::exact(e.volume()),
        BaseFunction::PiecewiseAffine(p) => {
            linearization_mass(alpha, p, 0).expect("checked at construction")
        }
        BaseFunction::Radial(r) => MassResult::exact(r.mass()),
        BaseFunction::GridBacked(g) => {
            let (value, error_bound) = g.mass();
            MassResult {
                value,
                error_bound,
                method: MassMethod::Quadrature,
            }
        }
    }
}

/// `J(f) = ∫_0^max vol{f >= t} dt`, integrated in `t = max e^{-u}` with
/// adaptive quadrature over doubling `u`-ranges until the tail is negligible.
pub fn total_mass_layer_cake(f: &AlphaConcaveFunction) -> MassResult {
    let m = f.max_value();
    let err_acc = std::cell::Cell::new(0.0f64);
    let integrand = |u: f64| {
        let t = m * (-u).exp();
        let (v, e) = f.levelset_volume(t);
        err_acc.set(err_acc.get().max(e));
        v * (-u).exp()
    };
    let mut total = 0.0;
    let mut error = 0.0;
    let (mut a, mut b) = (0.0, 1.0);
    loop {
        let r = integrate(&integrand, a, b, 1e-15, 1e-12, 2000);
        total += r.value;
        error += r.error;
        if r.value.abs() <= 1e-14 * total.abs() || b > 4096.0 {
            break;
        }
        a = b;
        b *= 2.0;
    }
    MassResult {
        value: m * total,
        error_bound: m * (error + 1e-14 * total) + err_acc.get() * m,
        method: MassMethod::LayerCake,
    }
}

/// `vol{f >= t}`; zero above the maximum.
pub fn levelset_volume(f: &AlphaConcaveFunction, t: f64) -> f64 {
    f.levelset_volume(t).0
}

/// `(∫ |f - g|^p)^{1/p}` by the trapezoid rule on `res` nodes per axis over
/// the union of the effective boxes.
pub fn lp_distance_with(f: &AlphaConcaveFunction, g: &AlphaConcaveFunction, p: f64, res: usize) -> Result<f64> {
    if f.dim() != g.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            got: g.dim(),
        });
    }
    let (flo, fhi) = f.effective_box();
    let (glo, ghi) = g.effective_box();
    let lo = [flo[0].min(glo[0]), flo[1].min(glo[1])];
    let hi = [fhi[0].max(ghi[0]), fhi[1].max(ghi[1])];
    let pad = |k: usize| 0.01 * (hi[k] - lo[k]).max(1e-12);
    let lo = [lo[0] - pad(0), lo[1] - pad(1)];
    let hi = [hi[0] + pad(0), hi[1] + pad(1)];
    let res = res.max(3);
    let step = |k: usize| (hi[k] - lo[k]) / (res - 1) as f64;
    let weight = |i: usize| if i == 0 || i == res - 1 { 0.5 } else { 1.0 };
    let diff = |x: Point| (f.eval(x) - g.eval(x)).abs().powf(p);
    let total = if f.dim() == 1 {
        let vals: Vec<f64> = (0..res)
            .map(|i| weight(i) * diff([lo[0] + i as f64 * step(0), 0.0]))
            .collect();
        pairwise_sum(&vals) * step(0)
    } else {
        use rayon::prelude::*;
        let rows: Vec<f64> = (0..res)
            .into_par_iter()
            .map(|i| {
                let x0 = lo[0] + i as f64 * step(0);
                let vals: Vec<f64> = (0..res)
                    .map(|j| weight(j) * diff([x0, lo[1] + j as f64 * step(1)]))
                    .collect();
                weight(i) * pairwise_sum(&vals)
            })
            .collect();
        pairwise_sum(&rows) * step(0) * step(1)
    };
    Ok(total.powf(1.0 / p))
}

/// `(∫ |g - f|^p)^{1/p}` by the box rule on the nodes of `g`.
pub fn lp_distance_on_grid(g: &GridFunction, f: &AlphaConcaveFunction, p: f64) -> f64 {
    let diffs: Vec<f64> = g
        .values()
        .iter()
        .enumerate()
        .map(|(i, &v)| (v - f.eval(g.node_point(i))).abs().powf(p))
        .collect();
    (pairwise_sum(&diffs) * g.cell_volume()).powf(1.0 / p)
}

/// [`lp_distance_with`] at the default resolution.
pub fn lp_distance(f: &AlphaConcaveFunction, g: &AlphaConcaveFunction, p: f64) -> Result<f64> {
    let res = if f.dim() == 1 { 20_001 } else { 801 };
    lp_distance_with(f, g, p, res)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functional::catalog::named;
    use crate::hull::EpiPoint;
    use crate::quadrature::integrate_triangle;

    fn unit_triangle() -> Simplex {
        Simplex::new(2, &[[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]).unwrap()
    }

    #[test]
    fn segment_examples() {
        let seg = Simplex::new(1, &[[0.0, 0.0], [1.0, 0.0]]).unwrap();
        let l = Affine {
            gradient: [1.0, 0.0],
            offset: 0.0,
        };
        let m0 = mass_affine_piece(AlphaParam::LOG, &seg, &l).unwrap().value;
        assert!((m0 - (1.0 - (-1.0f64).exp())).abs() < 1e-15);
        let m1 = mass_affine_piece(AlphaParam::Finite(1.0), &seg, &l).unwrap().value;
        assert!((m1 - 0.5).abs() < 1e-15);
    }

    #[test]
    fn unit_triangle_exponential() {
        let l = Affine {
            gradient: [1.0, 1.0],
            offset: 0.0,
        };
        let m = mass_affine_piece(AlphaParam::LOG, &unit_triangle(), &l).unwrap().value;
        assert!((m - (1.0 - 2.0 * (-1.0f64).exp())).abs() < 1e-15);
    }

    #[test]
    fn constant_piece() {
        let l = Affine {
            gradient: [0.0, 0.0],
            offset: 0.7,
        };
        let t = Simplex::new(2, &[[0.0, 0.0], [2.0, 0.0], [0.3, 1.5]]).unwrap();
        let m = mass_affine_piece(AlphaParam::LOG, &t, &l).unwrap().value;
        assert!((m - (-0.7f64).exp() * 1.5).abs() < 1e-15);
    }

    #[test]
    fn logarithmic_cases_match_quadrature() {
        let t = Simplex::new(2, &[[0.1, 0.0], [1.3, 0.2], [0.4, 1.1]]).unwrap();
        let l = Affine {
            gradient: [0.8, -0.5],
            offset: 0.3,
        };
        for a in [-1.0, -0.5, -2.0, 1e-4, -1e-4] {
            let alpha = AlphaParam::Finite(a);
            let exact = mass_affine_piece(alpha, &t, &l).unwrap().value;
            let v = t.vertices();
            let q = integrate_triangle(&|x| alpha.value_of_base(l.value(x)), [v[0], v[1], v[2]], 1e-13);
            assert!((exact - q.value).abs() <= 1e-11 * q.value, "alpha {a}: {exact} vs {}", q.value);
        }
    }

    #[test]
    fn clipped_pieces_match_high_precision_values() {
        // 30-digit iterated quadrature over the clipped polygon
        let t = Simplex::new(2, &[[0.1, 0.0], [1.3, 0.2], [0.4, 1.1]]).unwrap();
        let l = Affine {
            gradient: [0.8, -0.5],
            offset: 0.3,
        };
        for (a, want) in [(0.5, 0.334_726_875_000_000_03), (1.0, 0.277_985_152_057_245_1), (2.0, 0.149_955_645_149_587_76)] {
            let got = mass_affine_piece(AlphaParam::Finite(a), &t, &l).unwrap().value;
            assert!((got - want).abs() <= 1e-13 * want, "alpha {a}: {got} vs {want}");
        }
    }

    #[test]
    fn clip_with_two_cut_vertices_near_zero() {
        // the fan triangle on the cut edge has two working values of order 1e-16
        let t = Simplex::new(
            2,
            &[
                [0.8446583782660357, 0.6177823786264116],
                [-0.011547195555298817, 0.6456442380318683],
                [-0.4353086600040412, -0.26812644420412335],
            ],
        )
        .unwrap();
        let l = Affine {
            gradient: [1.955835251986981, -0.13414498733712765],
            offset: 0.15888352870044375,
        };
        let got = mass_affine_piece(AlphaParam::Finite(1.9261705211650562), &t, &l).unwrap().value;
        let want = 0.223_750_942_654_926_84;
        assert!((got - want).abs() <= 1e-12 * want, "{got} vs {want}");
    }

    #[test]
    fn clipped_piece() {
        // (1 - x - y)_+ over the square [0,1]^2 split in two triangles is 1/6
        let l = Affine {
            gradient: [1.0, 1.0],
            offset: 0.0,
        };
        let a = Simplex::new(2, &[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0]]).unwrap();
        let b = Simplex::new(2, &[[0.0, 0.0], [1.0, 1.0], [0.0, 1.0]]).unwrap();
        let one = AlphaParam::Finite(1.0);
        let m = mass_affine_piece(one, &a, &l).unwrap().value + mass_affine_piece(one, &b, &l).unwrap().value;
        assert!((m - 1.0 / 6.0).abs() < 1e-15);
        let ind = mass_affine_piece(AlphaParam::PosInf, &a, &Affine { gradient: [1.0, 0.0], offset: -0.5 }).unwrap();
        assert!((ind.value - 0.125).abs() < 1e-15);
    }

    #[test]
    fn degenerate_simplex_rejected() {
        let t = Simplex::new(2, &[[0.0, 0.0], [1.0, 1.0], [2.0, 2.0]]).unwrap();
        let l = Affine {
            gradient: [0.0, 0.0],
            offset: 0.0,
        };
        assert_eq!(mass_affine_piece(AlphaParam::LOG, &t, &l), Err(Error::DegenerateSimplex));
    }

    #[test]
    fn closed_form_totals() {
        let sqrt_pi = std::f64::consts::PI.sqrt();
        assert!((total_mass(&named("gaussian_1d").unwrap()).value - sqrt_pi).abs() < 1e-14);
        assert!((total_mass(&named("laplace_1d").unwrap()).value - 2.0).abs() < 1e-14);
        assert!((total_mass(&named("unit_square").unwrap()).value - 1.0).abs() < 1e-15);
        assert!((total_mass(&named("cauchy_1d").unwrap()).value - std::f64::consts::PI).abs() < 1e-13);
        assert!((total_mass(&named("tent_1d").unwrap()).value - 1.0).abs() < 1e-14);
    }

    #[test]
    fn layer_cake_agrees_with_closed_form() {
        for id in crate::functional::catalog::NAMED {
            let f = named(id).unwrap();
            let a = total_mass(&f).value;
            let b = total_mass_layer_cake(&f).value;
            assert!((a - b).abs() <= 1e-6 * a, "{id}: {a} vs {b}");
        }
    }

    #[test]
    fn minorant_mass_of_three_point_example() {
        let f = named("laplace_1d").unwrap();
        let pts: Vec<(Point, f64)> = [-1.0f64, 0.0, 1.0].iter().map(|&x| ([x, 0.0], (-x.abs()).exp())).collect();
        let q = crate::hull::alpha_minorant_from_points(&f, &pts).unwrap();
        let m = minorant_mass(&q).value;
        assert!((m - 2.0 * (1.0 - (-1.0f64).exp())).abs() < 1e-15);
        let _ = EpiPoint::new([0.0, 0.0], 0.0);
    }

    #[test]
    fn interval_distance() {
        let a = crate::functional::catalog::parse_entry(
            r#"{"alpha":"inf","kind":"indicator_polytope","dim":1,"params":{"vertices":[-0.5,0.5]}}"#,
        )
        .unwrap()
        .build(None)
        .unwrap();
        let b = crate::functional::catalog::parse_entry(
            r#"{"alpha":"inf","kind":"indicator_polytope","dim":1,"params":{"vertices":[0,1]}}"#,
        )
        .unwrap()
        .build(None)
        .unwrap();
        let d = lp_distance(&a, &b, 1.0).unwrap();
        assert!((d - 1.0).abs() < 1e-3, "{d}");
        assert_eq!(lp_distance(&a, &a, 1.0).unwrap(), 0.0);
    }
}
