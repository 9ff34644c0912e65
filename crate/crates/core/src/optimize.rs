// SPDX-License-Identifier: Apache-2.0

//! Nelder–Mead simplex search.

/// Result of a local search.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalMinimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub evaluations: usize,
}

/// Minimizes `f` from `x0` with an initial simplex of axis steps `scale`,
/// restarting the simplex at the incumbent until a restart stops improving.
/// `max_iterations` bounds each simplex run.
pub fn nelder_mead(f: &mut dyn FnMut(&[f64]) -> f64, x0: &[f64], scale: f64, max_iterations: usize, tol: f64) -> LocalMinimum {
    let mut best = run(f, x0, scale, max_iterations, tol);
    let mut step = scale;
    for _ in 0..8 {
        step *= 0.5;
        let next = run(f, &best.x, step, max_iterations, tol);
        let improved = next.value < best.value - tol * (1.0 + best.value.abs());
        let (iterations, evaluations) = (best.iterations + next.iterations, best.evaluations + next.evaluations);
        if next.value <= best.value {
            best = LocalMinimum { iterations, evaluations, ..next };
        } else {
            best.iterations = iterations;
            best.evaluations = evaluations;
        }
        if !improved {
            break;
        }
    }
    best
}

fn run(f: &mut dyn FnMut(&[f64]) -> f64, x0: &[f64], scale: f64, max_iterations: usize, tol: f64) -> LocalMinimum {
    let n = x0.len();
    let mut evaluations = 0;
    let mut eval = |x: &[f64], evaluations: &mut usize| {
        *evaluations += 1;
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };
    if n == 0 {
        let value = eval(x0, &mut evaluations);
        return LocalMinimum {
            x: x0.to_vec(),
            value,
            iterations: 0,
            evaluations,
        };
    }
    // adaptive coefficients for higher dimensions (Gao and Han)
    let nf = n as f64;
    let (rho, chi, gamma, sigma) = if n <= 2 {
        (1.0, 2.0, 0.5, 0.5)
    } else {
        (1.0, 1.0 + 2.0 / nf, 0.75 - 0.5 / nf, 1.0 - 1.0 / nf)
    };
    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    simplex.push(x0.to_vec());
    for i in 0..n {
        let mut x = x0.to_vec();
        x[i] += scale;
        simplex.push(x);
    }
    let mut values: Vec<f64> = simplex.iter().map(|x| eval(x, &mut evaluations)).collect();
    let mut iterations = 0;
    let mut order: Vec<usize> = (0..=n).collect();
    while iterations < max_iterations {
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
        let (lo, hi, second) = (order[0], order[n], order[n - 1]);
        let spread = (values[hi] - values[lo]).abs();
        let size = simplex
            .iter()
            .map(|x| x.iter().zip(&simplex[lo]).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
            .fold(0.0, f64::max);
        if spread <= tol * (1.0 + values[lo].abs()) && size <= tol.sqrt() * (1.0 + scale) {
            break;
        }
        iterations += 1;
        let mut centroid = vec![0.0; n];
        for &k in &order[..n] {
            for (c, v) in centroid.iter_mut().zip(&simplex[k]) {
                *c += v / nf;
            }
        }
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&simplex[hi])
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };
        let xr = along(rho);
        let fr = eval(&xr, &mut evaluations);
        if fr < values[lo] {
            let xe = along(rho * chi);
            let fe = eval(&xe, &mut evaluations);
            if fe < fr {
                simplex[hi] = xe;
                values[hi] = fe;
            } else {
                simplex[hi] = xr;
                values[hi] = fr;
            }
            continue;
        }
        if fr < values[second] {
            simplex[hi] = xr;
            values[hi] = fr;
            continue;
        }
        let (xc, fc) = if fr < values[hi] {
            let xc = along(rho * gamma);
            let fc = eval(&xc, &mut evaluations);
            (xc, fc)
        } else {
            let xc = along(-gamma);
            let fc = eval(&xc, &mut evaluations);
            (xc, fc)
        };
        if fc < values[hi].min(fr) {
            simplex[hi] = xc;
            values[hi] = fc;
            continue;
        }
        let best = simplex[lo].clone();
        for &k in &order[1..] {
            let shrunk: Vec<f64> = best
                .iter()
                .zip(&simplex[k])
                .map(|(b, x)| b + sigma * (x - b))
                .collect();
            values[k] = eval(&shrunk, &mut evaluations);
            simplex[k] = shrunk;
        }
    }
    let lo = (0..=n)
        .min_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)))
        .expect("simplex is nonempty");
    LocalMinimum {
        x: simplex[lo].clone(),
        value: values[lo],
        iterations,
        evaluations,
    }
}

/// Golden-section maximization of a unimodal `f` on `[a, b]` after a coarse
/// scan with `scan` samples.
pub fn maximize_scalar(f: &mut dyn FnMut(f64) -> f64, a: f64, b: f64, scan: usize, tol: f64) -> (f64, f64) {
    let scan = scan.max(3);
    let h = (b - a) / (scan - 1) as f64;
    let mut best = (a, f(a));
    let mut best_k = 0;
    for k in 1..scan {
        let x = a + k as f64 * h;
        let v = f(x);
        if v > best.1 {
            best = (x, v);
            best_k = k;
        }
    }
    let mut lo = a + best_k.saturating_sub(1) as f64 * h;
    let mut hi = (a + (best_k + 1) as f64 * h).min(b);
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > tol {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        }
    }
    for (x, v) in [(x1, f1), (x2, f2)] {
        if v > best.1 {
            best = (x, v);
        }
    }
    best
}
