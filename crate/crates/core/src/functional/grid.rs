// SPDX-License-Identifier: Apache-2.0

//! Sampled nonnegative functions on a regular box grid.
//!
//! A grid lives in an orthonormal frame. Axis-aligned grids use the identity
//! frame; grids produced by Steiner symmetrization use the frame `(v, u)` of the
//! hyperplane `u^⊥`, so that every grid line along the last axis is a line in the
//! symmetrization direction. Samples are stored row-major with the last axis
//! fastest.

use std::io::{Read, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{dot, Point};

/// Orthonormal axes of a grid. One-dimensional grids only use `axes[0]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Frame {
    pub axes: [Point; 2],
}

impl Frame {
    pub const IDENTITY: Frame = Frame {
        axes: [[1.0, 0.0], [0.0, 1.0]],
    };

    /// Frame whose last axis is `u` (the first axis is `u` rotated by -90°).
    pub fn with_line_direction(u: Point, dim: usize) -> Frame {
        if dim == 1 {
            Frame {
                axes: [[u[0].signum(), 0.0], [0.0, 1.0]],
            }
        } else {
            Frame {
                axes: [[u[1], -u[0]], u],
            }
        }
    }

    pub fn is_identity(&self, dim: usize) -> bool {
        if dim == 1 {
            self.axes[0][0] == 1.0
        } else {
            *self == Frame::IDENTITY
        }
    }

    #[inline]
    pub fn to_frame(&self, x: Point) -> Point {
        [dot(x, self.axes[0]), dot(x, self.axes[1])]
    }

    #[inline]
    pub fn to_world(&self, c: Point, dim: usize) -> Point {
        if dim == 1 {
            [c[0] * self.axes[0][0], 0.0]
        } else {
            [
                c[0] * self.axes[0][0] + c[1] * self.axes[1][0],
                c[0] * self.axes[0][1] + c[1] * self.axes[1][1],
            ]
        }
    }
}

/// Nonnegative samples on a regular grid over a box in a given frame.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    dim: usize,
    frame: Frame,
    lo: [f64; 2],
    hi: [f64; 2],
    res: [usize; 2],
    values: Vec<f64>,
    tail_bound: f64,
}

fn keys_weight(x: f64) -> f64 {
    const A: f64 = -0.5;
    let x = x.abs();
    if x <= 1.0 {
        ((A + 2.0) * x - (A + 3.0)) * x * x + 1.0
    } else if x < 2.0 {
        ((A * x - 5.0 * A) * x + 8.0 * A) * x - 4.0 * A
    } else {
        0.0
    }
}

impl GridFunction {
    pub fn new(
        dim: usize,
        frame: Frame,
        lo: [f64; 2],
        hi: [f64; 2],
        res: [usize; 2],
        values: Vec<f64>,
        tail_bound: f64,
    ) -> Result<Self> {
        if dim != 1 && dim != 2 {
            return Err(Error::UnsupportedDimension(dim));
        }
        let res = if dim == 1 { [res[0], 1] } else { res };
        for k in 0..dim {
            if res[k] < 2 {
                return Err(Error::InvalidGrid(format!("axis {k} needs at least 2 samples")));
            }
            if !(lo[k].is_finite() && hi[k].is_finite() && lo[k] < hi[k]) {
                return Err(Error::InvalidGrid(format!("axis {k} has an empty box")));
            }
        }
        if values.len() != res[0] * res[1] {
            return Err(Error::InvalidGrid(format!(
                "expected {} samples, got {}",
                res[0] * res[1],
                values.len()
            )));
        }
        if let Some(bad) = values.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
            return Err(Error::InvalidGrid(format!("sample {bad} is not a finite nonnegative value")));
        }
        if !(tail_bound.is_finite() && tail_bound >= 0.0) {
            return Err(Error::InvalidGrid("tail bound must be finite and nonnegative".into()));
        }
        let (lo, hi) = if dim == 1 {
            ([lo[0], 0.0], [hi[0], 0.0])
        } else {
            (lo, hi)
        };
        Ok(Self {
            dim,
            frame,
            lo,
            hi,
            res,
            values,
            tail_bound,
        })
    }

    /// Samples `f` at every node (rows in parallel).
    pub fn from_fn<F>(
        dim: usize,
        frame: Frame,
        lo: [f64; 2],
        hi: [f64; 2],
        res: [usize; 2],
        tail_bound: f64,
        f: F,
    ) -> Result<Self>
    where
        F: Fn(Point) -> f64 + Sync,
    {
        let res = if dim == 1 { [res[0], 1] } else { res };
        let line_len = res[dim - 1];
        let lines = res[0] * res[1] / line_len;
        let step = |k: usize| (hi[k] - lo[k]) / (res[k] - 1) as f64;
        let mut values = vec![0.0; res[0] * res[1]];
        values
            .par_chunks_mut(line_len)
            .enumerate()
            .for_each(|(line, chunk)| {
                for (j, out) in chunk.iter_mut().enumerate() {
                    let c = if dim == 1 {
                        [lo[0] + j as f64 * step(0), 0.0]
                    } else {
                        [lo[0] + line as f64 * step(0), lo[1] + j as f64 * step(1)]
                    };
                    *out = f(frame.to_world(c, dim)).max(0.0);
                }
            });
        debug_assert_eq!(lines * line_len, values.len());
        Self::new(dim, frame, lo, hi, res, values, tail_bound)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn lo(&self) -> [f64; 2] {
        self.lo
    }

    pub fn hi(&self) -> [f64; 2] {
        self.hi
    }

    pub fn resolution(&self) -> [usize; 2] {
        self.res
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    pub fn step(&self, axis: usize) -> f64 {
        (self.hi[axis] - self.lo[axis]) / (self.res[axis] - 1) as f64
    }

    pub fn cell_volume(&self) -> f64 {
        (0..self.dim).map(|k| self.step(k)).product()
    }

    /// Number of samples along each symmetrization line (the last axis).
    pub fn line_len(&self) -> usize {
        self.res[self.dim - 1]
    }

    pub fn lines(&self) -> std::slice::ChunksExact<'_, f64> {
        self.values.chunks_exact(self.line_len())
    }

    pub fn node_frame_coords(&self, index: usize) -> Point {
        if self.dim == 1 {
            [self.lo[0] + index as f64 * self.step(0), 0.0]
        } else {
            let i0 = index / self.res[1];
            let i1 = index % self.res[1];
            [
                self.lo[0] + i0 as f64 * self.step(0),
                self.lo[1] + i1 as f64 * self.step(1),
            ]
        }
    }

    pub fn node_point(&self, index: usize) -> Point {
        self.frame.to_world(self.node_frame_coords(index), self.dim)
    }

    /// True when the box is `[-r, r]^n` in its frame.
    pub fn has_centered_box(&self) -> bool {
        (0..self.dim).all(|k| self.lo[k] == -self.hi[k])
    }

    /// Radius of a centered ball containing the grid box.
    pub fn enclosing_radius(&self) -> f64 {
        if self.has_centered_box() {
            (0..self.dim).map(|k| self.hi[k]).fold(0.0, f64::max)
        } else {
            let mut r2: f64 = 0.0;
            for &a in &[self.lo[0], self.hi[0]] {
                for &b in &[self.lo[1], self.hi[1]] {
                    let b = if self.dim == 1 { 0.0 } else { b };
                    r2 = r2.max(a * a + b * b);
                }
            }
            r2.sqrt()
        }
    }

    fn fractional_index(&self, x: Point) -> Option<[f64; 2]> {
        let c = self.frame.to_frame(x);
        let mut out = [0.0; 2];
        for k in 0..self.dim {
            let u = (c[k] - self.lo[k]) / self.step(k);
            if !(u >= 0.0 && u <= (self.res[k] - 1) as f64) {
                return None;
            }
            out[k] = u;
        }
        Some(out)
    }

    #[inline]
    fn at(&self, i0: usize, i1: usize) -> f64 {
        self.values[i0 * self.res[1] + i1]
    }

    /// Multilinear interpolation; zero outside the box.
    pub fn eval(&self, x: Point) -> f64 {
        let Some(u) = self.fractional_index(x) else {
            return 0.0;
        };
        let i0 = (u[0].floor() as usize).min(self.res[0] - 2);
        let w0 = u[0] - i0 as f64;
        if self.dim == 1 {
            return (1.0 - w0) * self.values[i0] + w0 * self.values[i0 + 1];
        }
        let i1 = (u[1].floor() as usize).min(self.res[1] - 2);
        let w1 = u[1] - i1 as f64;
        (1.0 - w0) * ((1.0 - w1) * self.at(i0, i1) + w1 * self.at(i0, i1 + 1))
            + w0 * ((1.0 - w1) * self.at(i0 + 1, i1) + w1 * self.at(i0 + 1, i1 + 1))
    }

    /// Cubic-convolution interpolation (Keys, a = -1/2), zero-padded and clamped
    /// at zero from below.
    pub fn eval_cubic(&self, x: Point) -> f64 {
        let c = self.frame.to_frame(x);
        let mut u = [0.0; 2];
        for k in 0..self.dim {
            u[k] = (c[k] - self.lo[k]) / self.step(k);
            if !(u[k] > -1.0 && u[k] < self.res[k] as f64) {
                return 0.0;
            }
        }
        let b0 = u[0].floor() as i64;
        let sample = |i0: i64, i1: i64| -> f64 {
            if i0 < 0 || i1 < 0 || i0 >= self.res[0] as i64 || i1 >= self.res[1] as i64 {
                0.0
            } else {
                self.at(i0 as usize, i1 as usize)
            }
        };
        let mut acc = 0.0;
        if self.dim == 1 {
            for d0 in -1..=2 {
                let i0 = b0 + d0;
                acc += keys_weight(u[0] - i0 as f64) * sample(i0, 0);
            }
        } else {
            let b1 = u[1].floor() as i64;
            for d0 in -1..=2 {
                let i0 = b0 + d0;
                let w0 = keys_weight(u[0] - i0 as f64);
                if w0 == 0.0 {
                    continue;
                }
                let mut row = 0.0;
                for d1 in -1..=2 {
                    let i1 = b1 + d1;
                    row += keys_weight(u[1] - i1 as f64) * sample(i0, i1);
                }
                acc += w0 * row;
            }
        }
        acc.max(0.0)
    }

    pub fn max_value(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }

    pub fn argmax(&self) -> Point {
        let (idx, _) = self
            .values
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |acc, (i, &v)| if v > acc.1 { (i, v) } else { acc });
        self.node_point(idx)
    }

    /// Box-rule mass and its error bound: the larger of the widest `|S_h - S_2h|`
    /// over coarse subgrids of every parity and a second-difference bound
    /// (`h |f''| / 8` per cell, which also covers kinks), plus the declared
    /// tail mass.
    pub fn mass(&self) -> (f64, f64) {
        let fine: f64 = pairwise_sum(&self.values) * self.cell_volume();
        let coarse_cell = self.cell_volume() * (1 << self.dim) as f64;
        let parities: &[(usize, usize)] = if self.dim == 1 { &[(0, 0), (1, 0)] } else { &[(0, 0), (0, 1), (1, 0), (1, 1)] };
        let mut spread = 0.0f64;
        for &(p0, p1) in parities {
            let mut coarse_vals = Vec::with_capacity(self.values.len() / 2 + 1);
            for i0 in (p0..self.res[0]).step_by(2) {
                if self.dim == 1 {
                    coarse_vals.push(self.values[i0]);
                } else {
                    for i1 in (p1..self.res[1]).step_by(2) {
                        coarse_vals.push(self.at(i0, i1));
                    }
                }
            }
            let coarse = pairwise_sum(&coarse_vals) * coarse_cell;
            spread = spread.max((fine - coarse).abs());
        }
        (fine, spread.max(self.curvature_bound()) + self.tail_bound)
    }

    fn curvature_bound(&self) -> f64 {
        let mut total = 0.0;
        if self.dim == 1 {
            for i in 1..self.res[0] - 1 {
                total += (self.values[i - 1] - 2.0 * self.values[i] + self.values[i + 1]).abs();
            }
        } else {
            for i0 in 0..self.res[0] {
                for i1 in 0..self.res[1] {
                    if i0 > 0 && i0 + 1 < self.res[0] {
                        total += (self.at(i0 - 1, i1) - 2.0 * self.at(i0, i1) + self.at(i0 + 1, i1)).abs();
                    }
                    if i1 > 0 && i1 + 1 < self.res[1] {
                        total += (self.at(i0, i1 - 1) - 2.0 * self.at(i0, i1) + self.at(i0, i1 + 1)).abs();
                    }
                }
            }
        }
        total * self.cell_volume() / 8.0
    }

    pub fn count_at_least(&self, level: f64) -> usize {
        self.values.iter().filter(|&&v| v >= level).count()
    }

    /// Half a cell for every node on the boundary of the mask `{value >= level}`.
    pub fn mask_boundary_volume(&self, level: f64) -> f64 {
        let inside = |i0: usize, i1: usize| self.at(i0, i1) >= level;
        let mut boundary = 0usize;
        for i0 in 0..self.res[0] {
            for i1 in 0..self.res[1] {
                let me = inside(i0, i1);
                let mut differs = false;
                if i0 > 0 && inside(i0 - 1, i1) != me {
                    differs = true;
                }
                if i0 + 1 < self.res[0] && inside(i0 + 1, i1) != me {
                    differs = true;
                }
                if self.dim == 2 {
                    if i1 > 0 && inside(i0, i1 - 1) != me {
                        differs = true;
                    }
                    if i1 + 1 < self.res[1] && inside(i0, i1 + 1) != me {
                        differs = true;
                    }
                }
                if differs {
                    boundary += 1;
                }
            }
        }
        0.5 * boundary as f64 * self.cell_volume()
    }

    pub fn mask_bounding_box(&self, level: f64) -> Option<(Point, Point)> {
        let mut lo = [f64::INFINITY; 2];
        let mut hi = [f64::NEG_INFINITY; 2];
        let mut any = false;
        for (i, &v) in self.values.iter().enumerate() {
            if v >= level {
                any = true;
                let p = self.node_point(i);
                for k in 0..2 {
                    lo[k] = lo[k].min(p[k]);
                    hi[k] = hi[k].max(p[k]);
                }
            }
        }
        if self.dim == 1 {
            lo[1] = 0.0;
            hi[1] = 0.0;
        }
        any.then_some((lo, hi))
    }

    /// Largest distance from the origin of a node with a positive sample.
    pub fn support_radius(&self) -> f64 {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v > 0.0)
            .map(|(i, _)| crate::geometry::norm(self.node_point(i)))
            .fold(0.0, f64::max)
    }

    /// Outermost crossing points of `{s : value(p0 + s d) >= level}`, located by
    /// scanning at quarter-cell steps and bisecting each crossing to `1e-10`.
    pub fn chord(&self, p0: Point, d: Point, level: f64) -> Option<(f64, f64)> {
        let r = self.enclosing_radius() + norm_point(p0);
        let h = 0.25 * (0..self.dim).map(|k| self.step(k)).fold(f64::INFINITY, f64::min);
        let n = (2.0 * r / h).ceil() as usize + 1;
        let at = |s: f64| self.eval([p0[0] + s * d[0], p0[1] + s * d[1]]);
        let mut first = None;
        let mut last = None;
        for k in 0..n {
            let s = -r + k as f64 * h;
            if at(s) >= level {
                if first.is_none() {
                    first = Some(k);
                }
                last = Some(k);
            }
        }
        let (first, last) = (first?, last?);
        let refine = |mut inside: f64, mut outside: f64| {
            while (inside - outside).abs() > 1e-10 {
                let mid = 0.5 * (inside + outside);
                if at(mid) >= level {
                    inside = mid;
                } else {
                    outside = mid;
                }
            }
            inside
        };
        let s_first = -r + first as f64 * h;
        let s_last = -r + last as f64 * h;
        let lo = if first == 0 { s_first } else { refine(s_first, s_first - h) };
        let hi = if last + 1 == n { s_last } else { refine(s_last, s_last + h) };
        Some((lo, hi))
    }

    /// Resamples onto an axis-aligned grid covering the rotated box.
    pub fn to_axis_aligned(&self, res: usize) -> Result<GridFunction> {
        if self.frame.is_identity(self.dim) {
            return Ok(self.clone());
        }
        let mut lo = [f64::INFINITY; 2];
        let mut hi = [f64::NEG_INFINITY; 2];
        for &a in &[self.lo[0], self.hi[0]] {
            for &b in &[self.lo[1], self.hi[1]] {
                let p = self.frame.to_world([a, b], self.dim);
                for k in 0..2 {
                    lo[k] = lo[k].min(p[k]);
                    hi[k] = hi[k].max(p[k]);
                }
            }
        }
        GridFunction::from_fn(
            self.dim,
            Frame::IDENTITY,
            lo,
            hi,
            [res, res],
            self.tail_bound,
            |x| self.eval_cubic(x),
        )
    }

    /// Little-endian binary layout: `dim`, then `lo, hi` per axis, then the
    /// per-axis resolution (all 64-bit), then the row-major `f64` samples.
    /// Rotated grids are resampled to an axis-aligned grid first.
    pub fn write_binary<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        let grid = if self.frame.is_identity(self.dim) {
            std::borrow::Cow::Borrowed(self)
        } else {
            std::borrow::Cow::Owned(
                self.to_axis_aligned(self.res[0])
                    .map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidData, e))?,
            )
        };
        w.write_all(&(grid.dim as u64).to_le_bytes())?;
        for k in 0..grid.dim {
            w.write_all(&grid.lo[k].to_le_bytes())?;
            w.write_all(&grid.hi[k].to_le_bytes())?;
        }
        for k in 0..grid.dim {
            w.write_all(&(grid.res[k] as u64).to_le_bytes())?;
        }
        for v in &grid.values {
            w.write_all(&v.to_le_bytes())?;
        }
        Ok(())
    }

    pub fn read_binary<R: Read>(mut r: R) -> Result<Self> {
        let mut buf = [0u8; 8];
        let mut next = |r: &mut R| -> Result<[u8; 8]> {
            r.read_exact(&mut buf).map_err(|e| Error::Io {
                context: "reading grid".into(),
                message: e.to_string(),
            })?;
            Ok(buf)
        };
        let dim = u64::from_le_bytes(next(&mut r)?) as usize;
        if dim != 1 && dim != 2 {
            return Err(Error::UnsupportedDimension(dim));
        }
        let mut lo = [0.0; 2];
        let mut hi = [0.0; 2];
        for k in 0..dim {
            lo[k] = f64::from_le_bytes(next(&mut r)?);
            hi[k] = f64::from_le_bytes(next(&mut r)?);
        }
        let mut res = [1usize; 2];
        for slot in res.iter_mut().take(dim) {
            *slot = u64::from_le_bytes(next(&mut r)?) as usize;
        }
        let count = res[0].checked_mul(res[1]).ok_or_else(|| Error::InvalidGrid("resolution overflow".into()))?;
        let mut values = Vec::with_capacity(count.min(1 << 24));
        for _ in 0..count {
            values.push(f64::from_le_bytes(next(&mut r)?));
        }
        GridFunction::new(dim, Frame::IDENTITY, lo, hi, res, values, 0.0)
    }

    pub fn to_json(&self) -> GridJson {
        GridJson {
            dim: self.dim,
            r#box: (0..self.dim).map(|k| [self.lo[k], self.hi[k]]).collect(),
            resolution: self.res[..self.dim].to_vec(),
            values: self.values.clone(),
            frame: (!self.frame.is_identity(self.dim)).then_some(self.frame),
            tail_bound: self.tail_bound,
        }
    }

    pub fn from_json(json: &GridJson) -> Result<Self> {
        let dim = json.dim;
        if dim != 1 && dim != 2 {
            return Err(Error::UnsupportedDimension(dim));
        }
        if json.r#box.len() != dim || json.resolution.len() != dim {
            return Err(Error::InvalidGrid("box/resolution length must equal dim".into()));
        }
        let mut lo = [0.0; 2];
        let mut hi = [0.0; 2];
        let mut res = [1usize; 2];
        for k in 0..dim {
            lo[k] = json.r#box[k][0];
            hi[k] = json.r#box[k][1];
            res[k] = json.resolution[k];
        }
        GridFunction::new(
            dim,
            json.frame.unwrap_or(Frame::IDENTITY),
            lo,
            hi,
            res,
            json.values.clone(),
            json.tail_bound,
        )
    }
}

fn norm_point(p: Point) -> f64 {
    crate::geometry::norm(p)
}

/// JSON form of a grid function.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GridJson {
    #[serde(default)]
    pub dim: usize,
    pub r#box: Vec<[f64; 2]>,
    pub resolution: Vec<usize>,
    pub values: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frame: Option<Frame>,
    #[serde(default)]
    pub tail_bound: f64,
}

/// Deterministic pairwise summation.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    if values.len() <= 32 {
        return values.iter().sum();
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gaussian_1d(res: usize) -> GridFunction {
        GridFunction::from_fn(1, Frame::IDENTITY, [-6.0, 0.0], [6.0, 0.0], [res, 1], 0.0, |x| {
            (-x[0] * x[0]).exp()
        })
        .unwrap()
    }

    #[test]
    fn rejects_negative_samples() {
        let err = GridFunction::new(1, Frame::IDENTITY, [0.0, 0.0], [1.0, 0.0], [2, 1], vec![1.0, -1.0], 0.0);
        assert!(matches!(err, Err(Error::InvalidGrid(_))));
    }

    #[test]
    fn box_rule_mass_of_gaussian() {
        let g = gaussian_1d(513);
        let (m, err) = g.mass();
        assert!((m - std::f64::consts::PI.sqrt()).abs() < 1e-12);
        assert!(err < 1e-3);
    }

    #[test]
    fn mass_bound_covers_a_kink() {
        // (1 - x^2)_+ on [-1.1, 1.1]: the box rule misses the kinks at +-1
        let n = 513;
        let values = (0..n)
            .map(|i| {
                let x = -1.1 + 2.2 * i as f64 / (n - 1) as f64;
                (1.0 - x * x).max(0.0)
            })
            .collect();
        let g = GridFunction::new(1, Frame::IDENTITY, [-1.1, 0.0], [1.1, 0.0], [n, 1], values, 0.0).unwrap();
        let (m, err) = g.mass();
        assert!((m - 4.0 / 3.0).abs() <= err, "{m} {err}");
    }

    #[test]
    fn interpolation_reproduces_nodes_and_smooth_values() {
        let g = gaussian_1d(1025);
        for i in [0, 100, 512, 900] {
            let p = g.node_point(i);
            assert!((g.eval(p) - g.values()[i]).abs() < 1e-15);
            assert!((g.eval_cubic(p) - g.values()[i]).abs() < 1e-15);
        }
        let x: Point = [0.3217, 0.0];
        let exact = (-x[0] * x[0]).exp();
        assert!((g.eval_cubic(x) - exact).abs() < 1e-6);
        assert!((g.eval(x) - exact).abs() < 1e-4);
    }

    #[test]
    fn grid_chord_matches_analytic_level_set() {
        let g = gaussian_1d(2049);
        let t = (-1.0f64).exp();
        let (lo, hi) = g.chord([0.0, 0.0], [1.0, 0.0], t).unwrap();
        assert!((lo + 1.0).abs() < 1e-5 && (hi - 1.0).abs() < 1e-5, "{lo} {hi}");
    }

    #[test]
    fn binary_round_trip() {
        let g = GridFunction::from_fn(2, Frame::IDENTITY, [-1.0, -2.0], [1.0, 2.0], [5, 7], 0.0, |x| {
            1.0 + x[0] * x[0] + x[1]
        })
        .unwrap();
        let mut bytes = Vec::new();
        g.write_binary(&mut bytes).unwrap();
        assert_eq!(bytes.len(), 8 * (1 + 4 + 2 + 35));
        let back = GridFunction::read_binary(bytes.as_slice()).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn rotated_frame_round_trip_through_world_coordinates() {
        let u = [0.6, 0.8];
        let f = Frame::with_line_direction(u, 2);
        let c = [0.3, -1.1];
        let w = f.to_world(c, 2);
        let back = f.to_frame(w);
        assert!((back[0] - c[0]).abs() < 1e-15 && (back[1] - c[1]).abs() < 1e-15);
        assert_eq!(f.axes[1], u);
    }
}
