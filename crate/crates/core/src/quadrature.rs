// SPDX-License-Identifier: Apache-2.0

//! Adaptive Gauss–Kronrod (7/15) quadrature on intervals and triangles.

use std::cell::Cell;
use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::geometry::{add, cross, scale, sub, Point};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_728,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Integral estimate with an a-posteriori absolute error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
}

fn gk15(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = f(c - dx) + f(c + dx);
        kronrod += WGK[j] * s;
        if j % 2 == 1 {
            gauss += WG[j / 2] * s;
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).abs())
}

struct Piece {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Adaptive integration of `f` over `[a, b]` until the error estimate is below
/// `max(abs_tol, rel_tol |I|)` or `max_pieces` subintervals are in use.
pub fn integrate(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_pieces: usize,
) -> QuadResult {
    if a == b {
        return QuadResult { value: 0.0, error: 0.0 };
    }
    let (value, error) = gk15(f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Piece { a, b, value, error });
    let (mut total, mut err) = (value, error);
    while err > abs_tol.max(rel_tol * total.abs()) && heap.len() < max_pieces {
        let p = heap.pop().expect("heap is nonempty");
        let m = 0.5 * (p.a + p.b);
        if m <= p.a || m >= p.b {
            heap.push(p);
            break;
        }
        let (v1, e1) = gk15(f, p.a, m);
        let (v2, e2) = gk15(f, m, p.b);
        total += v1 + v2 - p.value;
        err += e1 + e2 - p.error;
        heap.push(Piece { a: p.a, b: m, value: v1, error: e1 });
        heap.push(Piece { a: m, b: p.b, value: v2, error: e2 });
    }
    // resum to shed the drift of the running updates
    let pieces = heap.into_vec();
    let value = pieces.iter().map(|p| p.value).sum();
    let error = pieces.iter().map(|p| p.error).sum();
    QuadResult { value, error }
}

/// Iterated adaptive integration over the triangle `v`.
pub fn integrate_triangle(f: &dyn Fn(Point) -> f64, v: [Point; 3], rel_tol: f64) -> QuadResult {
    let e1 = sub(v[1], v[0]);
    let e2 = sub(v[2], v[0]);
    let jac = cross(e1, e2).abs();
    if jac == 0.0 {
        return QuadResult { value: 0.0, error: 0.0 };
    }
    let inner_error = Cell::new(0.0f64);
    let outer = |u: f64| {
        let top = 1.0 - u;
        let g = |w: f64| f(add(v[0], add(scale(e1, u), scale(e2, w))));
        let r = integrate(&g, 0.0, top, 0.0, 0.1 * rel_tol, 4000);
        inner_error.set(inner_error.get().max(r.error));
        r.value
    };
    let r = integrate(&outer, 0.0, 1.0, 0.0, rel_tol, 4000);
    QuadResult {
        value: r.value * jac,
        error: (r.error + inner_error.get()) * jac,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_and_exponential() {
        let r = integrate(&|x| x * x, 0.0, 3.0, 0.0, 1e-14, 100);
        assert!((r.value - 9.0).abs() < 1e-13);
        let r = integrate(&|x| (-x).exp(), 0.0, 1.0, 0.0, 1e-14, 100);
        assert!((r.value - (1.0 - (-1.0f64).exp())).abs() < 1e-15);
    }

    #[test]
    fn endpoint_singularity() {
        let r = integrate(&|x: f64| x.sqrt(), 0.0, 1.0, 0.0, 1e-12, 2000);
        assert!((r.value - 2.0 / 3.0).abs() < 1e-11, "{r:?}");
    }

    #[test]
    fn unit_triangle_exponential() {
        let r = integrate_triangle(&|p| (-(p[0] + p[1])).exp(), [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]], 1e-13);
        let exact = 1.0 - 2.0 * (-1.0f64).exp();
        assert!((r.value - exact).abs() < 1e-13);
    }
}
