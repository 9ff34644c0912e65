// SPDX-License-Identifier: Apache-2.0

#![allow(dead_code)]

use minorantlab::functional::{AlphaConcaveFunction, AlphaParam, BaseFunction, Cone, Gauge, Quadratic};
use minorantlab::geometry::Point;
use minorantlab::symmetry::{chord_bounds, Hyperplane};
use rand::Rng;

/// Random quadratic base `(x - c)^T R diag(a, b) R^T (x - c)` with `|c|` small
/// enough that the origin stays in the support for `alpha <= 1`.
pub fn random_quadratic<R: Rng>(rng: &mut R, dim: usize, alpha: f64) -> AlphaConcaveFunction {
    let (q, center) = if dim == 1 {
        let a = rng.gen_range(0.5..2.0);
        ([[a, 0.0], [0.0, 0.0]], [rng.gen_range(-0.3..0.3), 0.0])
    } else {
        let (a, b) = (rng.gen_range(0.5..2.0), rng.gen_range(0.5..2.0));
        let th: f64 = rng.gen_range(0.0..std::f64::consts::PI);
        let (c, s) = (th.cos(), th.sin());
        let q = [
            [a * c * c + b * s * s, (a - b) * c * s],
            [(a - b) * c * s, a * s * s + b * c * c],
        ];
        (q, [rng.gen_range(-0.3..0.3), rng.gen_range(-0.3..0.3)])
    };
    let base = BaseFunction::Quadratic(Quadratic::new(dim, q, center).unwrap());
    AlphaConcaveFunction::new(AlphaParam::Finite(alpha), base).unwrap()
}

/// Random polyhedral cone `max_i <g_i, x - apex>` with `exp(-psi)`.
pub fn random_cone<R: Rng>(rng: &mut R, dim: usize) -> AlphaConcaveFunction {
    let gauge = if dim == 1 {
        Gauge::Polyhedral {
            gradients: vec![[rng.gen_range(0.5..2.0), 0.0], [-rng.gen_range(0.5..2.0), 0.0]],
            walls: vec![],
        }
    } else {
        let k = rng.gen_range(3..6);
        let off: f64 = rng.gen_range(0.0..1.0);
        let gradients = (0..k)
            .map(|i| {
                let a = std::f64::consts::TAU * (i as f64 + off + rng.gen_range(-0.2..0.2)) / k as f64;
                let r = rng.gen_range(0.5..2.0);
                [r * a.cos(), r * a.sin()]
            })
            .collect();
        Gauge::Polyhedral { gradients, walls: vec![] }
    };
    let apex = if dim == 1 {
        [rng.gen_range(-0.3..0.3), 0.0]
    } else {
        [rng.gen_range(-0.3..0.3), rng.gen_range(-0.3..0.3)]
    };
    AlphaConcaveFunction::new(AlphaParam::LOG, BaseFunction::Cone(Cone::new(dim, gauge, apex).unwrap())).unwrap()
}

/// `sup{t : the chord of hyp(f) through (x', t) along u is nonempty}`.
pub fn line_max(f: &AlphaConcaveFunction, h: &Hyperplane, base: Point) -> f64 {
    let m = f.max_value();
    if chord_bounds(f, h, base, m).is_ok() {
        return m;
    }
    let (mut lo, mut hi) = (0.0, m);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if chord_bounds(f, h, base, mid).is_ok() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}
