// SPDX-License-Identifier: Apache-2.0

//! Steiner symmetrization about hyperplanes through the origin, chord bounds
//! of hypographs, and the symmetric decreasing rearrangement.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functional::{
    unit_ball_volume, AlphaConcaveFunction, BaseFunction, Cone, Ellipsoid, Frame, Gauge, GridFunction, Quadratic,
    RadialProfile, EFFECTIVE_CUTOFF,
};
use crate::geometry::{add, dot, norm, scale, sub, Point, ORIGIN};
use crate::measure::lp_distance_on_grid;
use crate::quadrature::integrate;

/// Samples per axis of symmetrization grids (odd, so the center is a node).
pub const GRID_RESOLUTION: usize = 513;

/// Padding of the symmetrization box relative to the effective radius.
pub const BOX_PADDING: f64 = 1.1;

/// Samples per output cell used when a grid line is resampled.
const UPSAMPLE: usize = 2;

/// Radii in profiles obtained by level-set inversion.
const PROFILE_RADII: usize = 4096;

/// `H = u^⊥` through the origin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Hyperplane {
    normal: Point,
    dim: usize,
}

impl Hyperplane {
    /// Normalizes `normal`; in one dimension the only hyperplane is `{0}`.
    pub fn new(normal: Point, dim: usize) -> Result<Self> {
        if dim != 1 && dim != 2 {
            return Err(Error::UnsupportedDimension(dim));
        }
        if dim == 1 {
            return Ok(Self::origin());
        }
        let len = norm(normal);
        if !(len > 0.0 && len.is_finite()) {
            return Err(Error::InvalidBase(format!("hyperplane normal {normal:?} has no direction")));
        }
        Ok(Self {
            normal: scale(normal, 1.0 / len),
            dim,
        })
    }

    /// The hyperplane `{0}` of the real line.
    pub fn origin() -> Self {
        Self {
            normal: [1.0, 0.0],
            dim: 1,
        }
    }

    /// `H` with normal at angle `theta` from the first axis.
    pub fn from_angle(theta: f64) -> Self {
        Self {
            normal: [theta.cos(), theta.sin()],
            dim: 2,
        }
    }

    pub fn normal(&self) -> Point {
        self.normal
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Component of `x` along `H`.
    pub fn project(&self, x: Point) -> Point {
        if self.dim == 1 {
            ORIGIN
        } else {
            sub(x, scale(self.normal, dot(x, self.normal)))
        }
    }

    /// `x` reflected through `H`.
    pub fn reflect(&self, x: Point) -> Point {
        sub(x, scale(self.normal, 2.0 * dot(x, self.normal)))
    }
}

/// `f^-(h) <= f^+(h)`: ends of the chord of `hyp(f)` through `h` along `u`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChordBounds {
    pub lower: f64,
    pub upper: f64,
}

impl ChordBounds {
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }

    pub fn half_length(&self) -> f64 {
        0.5 * (self.upper - self.lower)
    }
}

/// Chord of `hyp(f)` through `(x', height)` in direction `u`, where `x'` is
/// projected onto `H` first.
pub fn chord_bounds(f: &AlphaConcaveFunction, h: &Hyperplane, base: Point, height: f64) -> Result<ChordBounds> {
    if h.dim() != f.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            got: h.dim(),
        });
    }
    let p = h.project(base);
    if !(height > 0.0) {
        return Err(Error::ZeroHeight(p[..f.dim()].to_vec()));
    }
    let (lower, upper) = f.chord(p, h.normal(), height).ok_or(Error::EmptyChord)?;
    Ok(ChordBounds { lower, upper })
}

/// Output box radius: kept for grids already on a centered symmetrization
/// box (symmetrization never moves mass away from the origin), otherwise the
/// padded effective radius.
fn output_radius(f: &AlphaConcaveFunction) -> f64 {
    if let Some(g) = f.grid() {
        let res = g.resolution();
        let square = f.dim() == 1 || (res[0] == res[1] && g.hi()[0] == g.hi()[1]);
        if g.has_centered_box() && square && res[0] % 2 == 1 {
            return g.hi()[0];
        }
    }
    BOX_PADDING * f.effective_radius()
}

/// Mass of `f` below the effective cutoff, `∫_0^c vol{f >= t} dt`.
fn tail_mass(f: &AlphaConcaveFunction) -> f64 {
    if let Some(g) = f.grid() {
        return g.tail_bound();
    }
    let c = EFFECTIVE_CUTOFF * f.max_value();
    let integrand = |u: f64| {
        let t = c * (-u).exp();
        f.levelset_volume(t).0 * (-u).exp()
    };
    let mut total = 0.0;
    let (mut a, mut b) = (0.0, 1.0);
    loop {
        let r = integrate(&integrand, a, b, 0.0, 1e-8, 200);
        total += r.value;
        if r.value <= 1e-10 * total || b > 4096.0 {
            break;
        }
        a = b;
        b *= 2.0;
    }
    c * total
}

/// `sup{t : len{s : f(p + s u) >= t} >= 2|s_k|}` at `s_k = k h`, `k = 0..=half`.
fn invert_line(f: &AlphaConcaveFunction, p: Point, u: Point, h: f64, half: usize) -> Vec<f64> {
    let mut out = vec![0.0; half + 1];
    let m = f.max_value();
    let floor = m * EFFECTIVE_CUTOFF * 1e-6;
    let length = |t: f64| f.chord(p, u, t).map(|(lo, hi)| hi - lo);
    if length(floor).is_none() {
        return out;
    }
    // the largest value on the line
    let mut top = m;
    if length(m).is_none() {
        let (mut lo, mut hi) = (floor, m);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if length(mid).is_some() {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= 1e-16 * hi {
                break;
            }
        }
        top = lo;
    }
    out[0] = top;
    for k in 1..=half {
        let need = 2.0 * k as f64 * h;
        let prev = out[k - 1];
        if length(prev).is_some_and(|l| l >= need) {
            out[k] = prev;
            continue;
        }
        if !length(floor).is_some_and(|l| l >= need) {
            break;
        }
        let (mut lo, mut hi) = (floor, prev);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if length(mid).is_some_and(|l| l >= need) {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= 1e-15 * hi {
                break;
            }
        }
        out[k] = lo;
    }
    out
}

/// Symmetric decreasing rearrangement of a line sampled at spacing `h / upsample`
/// onto nodes `k h`, `k = 0..=half`, pairing ranks so that `+k` and `-k` agree.
fn rearrange_samples(mut samples: Vec<f64>, upsample: usize, half: usize) -> Vec<f64> {
    samples.sort_unstable_by(|a, b| b.total_cmp(a));
    let at = |i: usize| samples.get(i).copied().unwrap_or(0.0);
    let mut out = Vec::with_capacity(half + 1);
    out.push(at(0));
    for k in 1..=half {
        let m = 2 * k * upsample;
        out.push(0.5 * (at(m - 1) + at(m)));
    }
    out
}

/// `S_H f` on a centered grid in the frame `(v, u)`: every line along `u` is
/// replaced by its symmetric decreasing rearrangement about `H`.
pub fn steiner_symmetrize(f: &AlphaConcaveFunction, h: &Hyperplane) -> Result<AlphaConcaveFunction> {
    steiner_symmetrize_with(f, h, GRID_RESOLUTION)
}

/// [`steiner_symmetrize`] at a chosen (odd) resolution.
pub fn steiner_symmetrize_with(f: &AlphaConcaveFunction, h: &Hyperplane, resolution: usize) -> Result<AlphaConcaveFunction> {
    let dim = f.dim();
    if h.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: h.dim(),
        });
    }
    if resolution < 3 || resolution.is_multiple_of(2) {
        return Err(Error::InvalidGrid(format!("symmetrization needs an odd resolution >= 3, got {resolution}")));
    }
    let radius = output_radius(f);
    let half = resolution / 2;
    let step = radius / half as f64;
    let u = if dim == 1 { [1.0, 0.0] } else { h.normal() };
    let frame = if dim == 1 {
        Frame::IDENTITY
    } else {
        Frame::with_line_direction(u, 2)
    };
    let v = frame.axes[0];
    let lines = if dim == 1 { 1 } else { resolution };
    let same_geometry = f.grid().is_some_and(|g| {
        g.frame() == &frame
            && g.resolution()[..dim].iter().all(|&r| r == resolution)
            && g.has_centered_box()
            && (0..dim).all(|k| g.hi()[k] == radius)
    });
    let line_values = |i: usize| -> Vec<f64> {
        let a = if dim == 1 { 0.0 } else { -radius + i as f64 * step };
        let p = scale(v, a);
        match f.grid() {
            Some(g) if same_geometry => {
                let row = g.lines().nth(i).expect("line index is in range");
                rearrange_samples(row.to_vec(), 1, half)
            }
            Some(g) => {
                let n = 2 * half * UPSAMPLE;
                let fine = step / UPSAMPLE as f64;
                let samples: Vec<f64> = (0..=n)
                    .map(|j| {
                        let s = (j as f64 - (half * UPSAMPLE) as f64) * fine;
                        g.eval_cubic(add(p, scale(u, s)))
                    })
                    .collect();
                rearrange_samples(samples, UPSAMPLE, half)
            }
            None => invert_line(f, p, u, step, half),
        }
    };
    let rows: Vec<Vec<f64>> = (0..lines).into_par_iter().map(line_values).collect();
    let mut values = Vec::with_capacity(lines * resolution);
    for row in rows {
        for j in 0..resolution {
            values.push(row[j.abs_diff(half)]);
        }
    }
    let grid = GridFunction::new(
        dim,
        frame,
        [-radius, -radius],
        [radius, radius],
        [resolution, resolution],
        values,
        tail_mass(f),
    )?;
    AlphaConcaveFunction::from_grid(f.alpha(), grid)
}

/// `f*`: closed forms for quadratic, cone and indicator kinds, a radial
/// profile otherwise.
pub fn rearrange(f: &AlphaConcaveFunction) -> Result<AlphaConcaveFunction> {
    let n = f.dim();
    let kappa = unit_ball_volume(n);
    if f.is_radially_symmetric() {
        return Ok(f.clone());
    }
    let base = match f.base() {
        BaseFunction::Quadratic(q) => {
            BaseFunction::Quadratic(Quadratic::isotropic(n, q.determinant().powf(1.0 / n as f64))?)
        }
        BaseFunction::Cone(c) => {
            let rate = (kappa / c.unit_volume()).powf(1.0 / n as f64);
            BaseFunction::Cone(Cone::new(n, Gauge::Euclidean { rate }, ORIGIN)?)
        }
        BaseFunction::IndicatorOfPolytope(_) | BaseFunction::IndicatorOfEllipsoid(_) => {
            let vol = f.levelset_volume(f.max_value()).0;
            let r = (vol / kappa).powf(1.0 / n as f64);
            BaseFunction::IndicatorOfEllipsoid(Ellipsoid::ball(n, r, ORIGIN)?)
        }
        BaseFunction::GridBacked(g) => return AlphaConcaveFunction::from_radial(f.alpha(), grid_profile(g)?),
        _ => return AlphaConcaveFunction::from_radial(f.alpha(), inverted_profile(f)?),
    };
    AlphaConcaveFunction::new(f.alpha(), base)
}

/// Profile from sorted grid samples: the `m`-th largest sample sits at the
/// radius enclosing `m + 1/2` cells.
fn grid_profile(g: &GridFunction) -> Result<RadialProfile> {
    let n = g.dim();
    let kappa = unit_ball_volume(n);
    let cell = g.cell_volume();
    let mut values: Vec<f64> = g.values().iter().copied().filter(|v| *v > 0.0).collect();
    values.sort_unstable_by(|a, b| b.total_cmp(a));
    let radii: Vec<f64> = (0..values.len())
        .map(|m| ((m as f64 + 0.5) * cell / kappa).powf(1.0 / n as f64))
        .collect();
    RadialProfile::new(n, radii, values)
}

/// Profile by inverting `t -> vol{f >= t}` on equally spaced radii.
fn inverted_profile(f: &AlphaConcaveFunction) -> Result<RadialProfile> {
    let n = f.dim();
    let kappa = unit_ball_volume(n);
    let m = f.max_value();
    let floor = EFFECTIVE_CUTOFF * m;
    let r_max = (f.levelset_volume(floor).0 / kappa).powf(1.0 / n as f64);
    let mut radii = Vec::with_capacity(PROFILE_RADII + 1);
    let mut values = Vec::with_capacity(PROFILE_RADII + 1);
    let mut prev = m;
    for k in 0..=PROFILE_RADII {
        let r = r_max * k as f64 / PROFILE_RADII as f64;
        let need = kappa * r.powi(n as i32);
        let (mut lo, mut hi) = (floor, prev);
        if f.levelset_volume(hi).0 >= need {
            lo = hi;
        } else {
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                if f.levelset_volume(mid).0 >= need {
                    lo = mid;
                } else {
                    hi = mid;
                }
                if hi - lo <= 1e-15 * hi {
                    break;
                }
            }
        }
        radii.push(r);
        values.push(lo);
        prev = lo;
    }
    RadialProfile::new(n, radii, values)
}

/// `m` hyperplanes with normals uniform on the circle, reproducible from `seed`.
pub fn random_hyperplane_sequence(seed: u64, dim: usize, m: usize) -> Result<Vec<Hyperplane>> {
    if dim != 1 && dim != 2 {
        return Err(Error::UnsupportedDimension(dim));
    }
    if dim == 1 {
        return Ok(vec![Hyperplane::origin(); m]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..m).map(|_| Hyperplane::from_angle(rng.gen::<f64>() * TAU)).collect())
}

/// Result of a symmetrization chain.
#[derive(Debug, Clone)]
pub struct ChainResult {
    pub function: AlphaConcaveFunction,
    /// `L^1` distance to `f*` after each step (empty unless recorded).
    pub distances: Vec<f64>,
    pub rearrangement: AlphaConcaveFunction,
}

/// `S_{H_m} ... S_{H_1} f`, optionally recording the `L^1` distance to `f*`
/// after each step.
pub fn symmetrization_chain(f: &AlphaConcaveFunction, hyperplanes: &[Hyperplane], record: bool) -> Result<ChainResult> {
    let fstar = rearrange(f)?;
    let mut current = f.clone();
    let mut distances = Vec::new();
    for h in hyperplanes {
        current = steiner_symmetrize(&current, h)?;
        if record {
            let g = current.grid().expect("symmetrization yields a grid");
            distances.push(lp_distance_on_grid(g, &fstar, 1.0));
        }
    }
    Ok(ChainResult {
        function: current,
        distances,
        rearrangement: fstar,
    })
}
