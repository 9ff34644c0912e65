// SPDX-License-Identifier: Apache-2.0

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geometry::{norm, Point};

/// A radially symmetric, radially nonincreasing function stored as a profile
/// table: linear interpolation between `(radii[k], values[k])`, constant
/// `values[0]` inside `radii[0]`, zero beyond the last radius.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialProfile {
    dim: usize,
    radii: Vec<f64>,
    values: Vec<f64>,
}

impl RadialProfile {
    pub fn new(dim: usize, radii: Vec<f64>, mut values: Vec<f64>) -> Result<Self> {
        if dim != 1 && dim != 2 {
            return Err(Error::UnsupportedDimension(dim));
        }
        if radii.is_empty() || radii.len() != values.len() {
            return Err(Error::InvalidBase("radial profile needs matching, nonempty tables".into()));
        }
        if radii[0] < 0.0 || radii.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidBase("profile radii must be strictly increasing from >= 0".into()));
        }
        if values.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
            return Err(Error::InvalidBase("profile values must be finite and nonnegative".into()));
        }
        // enforce monotonicity against rounding in the producer
        for k in 1..values.len() {
            if values[k] > values[k - 1] {
                values[k] = values[k - 1];
            }
        }
        Ok(Self { dim, radii, values })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn max_value(&self) -> f64 {
        self.values[0]
    }

    pub fn outer_radius(&self) -> f64 {
        *self.radii.last().unwrap()
    }

    pub fn profile(&self, r: f64) -> f64 {
        if r <= self.radii[0] {
            return self.values[0];
        }
        let last = self.radii.len() - 1;
        if r > self.radii[last] {
            return 0.0;
        }
        let k = self.radii.partition_point(|&q| q < r);
        let (r0, r1) = (self.radii[k - 1], self.radii[k]);
        let w = (r - r0) / (r1 - r0);
        (1.0 - w) * self.values[k - 1] + w * self.values[k]
    }

    pub fn eval(&self, x: Point) -> f64 {
        let r = if self.dim == 1 { x[0].abs() } else { norm(x) };
        self.profile(r)
    }

    /// `sup{r : profile(r) >= t}`, or `None` when `t` exceeds the maximum.
    pub fn level_radius(&self, t: f64) -> Option<f64> {
        if t > self.values[0] {
            return None;
        }
        // last index with value >= t
        let k = self.values.partition_point(|&v| v >= t);
        let last = self.values.len() - 1;
        if k > last {
            return Some(self.radii[last]);
        }
        let (v0, v1) = (self.values[k - 1], self.values[k]);
        let (r0, r1) = (self.radii[k - 1], self.radii[k]);
        if v0 == v1 {
            return Some(r0);
        }
        Some(r0 + (r1 - r0) * (v0 - t) / (v0 - v1))
    }

    /// Exact integral of the piecewise-linear profile over `R^n`.
    pub fn mass(&self) -> f64 {
        let r0 = self.radii[0];
        let mut total = if self.dim == 1 {
            2.0 * r0 * self.values[0]
        } else {
            PI * r0 * r0 * self.values[0]
        };
        for k in 1..self.radii.len() {
            let (a, b) = (self.radii[k - 1], self.radii[k]);
            let (fa, fb) = (self.values[k - 1], self.values[k]);
            total += if self.dim == 1 {
                (b - a) * (fa + fb)
            } else {
                // 2 pi ∫ (linear) r dr on [a, b]
                let slope = (fb - fa) / (b - a);
                let c = fa - slope * a;
                2.0 * PI * (c * (b * b - a * a) / 2.0 + slope * (b * b * b - a * a * a) / 3.0)
            };
        }
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profile_interpolates_and_inverts() {
        let p = RadialProfile::new(1, vec![0.0, 1.0, 2.0], vec![1.0, 0.5, 0.0]).unwrap();
        assert_eq!(p.eval([-0.5, 0.0]), 0.75);
        assert_eq!(p.eval([3.0, 0.0]), 0.0);
        assert_eq!(p.level_radius(0.75), Some(0.5));
        assert_eq!(p.level_radius(2.0), None);
        // triangle 1 - r/2 on [-2, 2]
        assert!((p.mass() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn planar_mass_of_a_cone() {
        // 1 - r on the unit disk: volume of a cone with height 1 = pi / 3
        let n = 1000;
        let radii: Vec<f64> = (0..=n).map(|k| k as f64 / n as f64).collect();
        let values: Vec<f64> = radii.iter().map(|r| 1.0 - r).collect();
        let p = RadialProfile::new(2, radii, values).unwrap();
        assert!((p.mass() - PI / 3.0).abs() < 1e-12);
    }
}
