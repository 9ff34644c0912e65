// SPDX-License-Identifier: Apache-2.0

//! Best alpha-affine minorants with at most `N` break points, the defect
//! `G(f) = J(f) - max J(p)`, and the Macbeath pair construction for Steiner
//! symmetrization.

use std::cmp::Ordering;
use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functional::AlphaConcaveFunction;
use crate::geometry::{add, dot, scale, Point};
use crate::hull::{alpha_minorant_from_epigraph, alpha_minorant_from_points, AlphaMinorant, EpiPoint, InnerLinearization};
use crate::measure::{linearization_mass, minorant_mass, total_mass, MassResult};
use crate::optimize::{maximize_scalar, nelder_mead};
use crate::symmetry::{chord_bounds, steiner_symmetrize, Hyperplane};

/// Default enumeration budget of [`brute_force_minorant`].
pub const BRUTE_FORCE_BUDGET: f64 = 5e7;

/// Masses closer than this are ties.
const TIE: f64 = 1e-12;

/// Multi-start local search settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, rename_all = "camelCase")]
pub struct OptimizerConfig {
    pub restarts: usize,
    pub max_iterations: usize,
    /// Initial simplex step as a fraction of the effective diameter.
    pub simplex_scale: f64,
    pub seed: u64,
    /// Optimize symmetric orbits thoroughly for the structured start.
    pub symmetric_ansatz: bool,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            restarts: 32,
            max_iterations: 500,
            simplex_scale: 0.25,
            seed: 0,
            symmetric_ansatz: false,
        }
    }
}

/// One local search of a multi-start run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RestartRecord {
    pub restart: usize,
    pub mass: f64,
    pub evaluations: usize,
}

/// Best minorant found, with its mass and the optimizer's uncertainty.
#[derive(Debug, Clone)]
pub struct MinorantSolution {
    pub minorant: AlphaMinorant,
    pub mass: MassResult,
    pub break_point_count: usize,
    /// Best minus second-best restart mass plus the integration bound.
    pub optimizer_gap: f64,
    pub trace: Vec<RestartRecord>,
    pub seed: u64,
}

impl MinorantSolution {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "mass": self.mass,
            "break_point_count": self.break_point_count,
            "optimizer_gap": self.optimizer_gap,
            "seed": self.seed,
            "linearization": self.minorant.linearization().to_json(),
            "trace": self.trace,
        })
    }
}

/// Graph points `(x, psi(x))` of `f` at the effective-set retractions of `xs`.
fn graph_points(f: &AlphaConcaveFunction, xs: &[Point]) -> Vec<EpiPoint> {
    let alpha = f.alpha();
    xs.iter()
        .filter_map(|&x| {
            let x = f.retract(x);
            let y = f.eval(x);
            (y > 0.0).then(|| EpiPoint::new(x, alpha.base_of_value(y)))
        })
        .collect()
}

fn epi_mass(f: &AlphaConcaveFunction, epi: &[EpiPoint]) -> f64 {
    match InnerLinearization::build(f.dim(), epi, true) {
        Ok(lin) => linearization_mass(f.alpha(), &lin, 0).map(|m| m.value).unwrap_or(0.0),
        Err(_) => 0.0,
    }
}

fn mass_at(f: &AlphaConcaveFunction, xs: &[Point]) -> f64 {
    epi_mass(f, &graph_points(f, xs))
}

fn to_points(dim: usize, params: &[f64]) -> Vec<Point> {
    if dim == 1 {
        params.iter().map(|&x| [x, 0.0]).collect()
    } else {
        params.chunks_exact(2).map(|c| [c[0], c[1]]).collect()
    }
}

fn to_params(dim: usize, pts: &[Point]) -> Vec<f64> {
    pts.iter().flat_map(|p| p[..dim].to_vec()).collect()
}

/// Lexicographic order of sorted break points, for tie-breaking.
fn break_point_order(a: &[EpiPoint], b: &[EpiPoint]) -> Ordering {
    let key = |v: &[EpiPoint]| {
        let mut k: Vec<[f64; 3]> = v.iter().map(|p| [p.x[0], p.x[1], p.t]).collect();
        k.sort_by(|p, q| p.iter().zip(q).map(|(x, y)| x.total_cmp(y)).find(|o| o.is_ne()).unwrap_or(Ordering::Equal));
        k
    };
    let (ka, kb) = (key(a), key(b));
    for (p, q) in ka.iter().zip(&kb) {
        for (x, y) in p.iter().zip(q) {
            let o = x.total_cmp(y);
            if o.is_ne() {
                return o;
            }
        }
    }
    ka.len().cmp(&kb.len())
}

/// True when `(ma, a)` beats `(mb, b)`: larger mass, then smaller break points.
fn better(ma: f64, a: &[EpiPoint], mb: f64, b: &[EpiPoint]) -> bool {
    if (ma - mb).abs() <= TIE * ma.abs().max(mb.abs()).max(1.0) {
        break_point_order(a, b) == Ordering::Less
    } else {
        ma > mb
    }
}

/// Symmetric orbit about `c`: in 1D, `n` equally spaced points on
/// `[c - rho, c + rho]`; in 2D a regular polygon, optionally with its center.
fn orbit(dim: usize, c: Point, n: usize, rho: f64, with_center: bool) -> Vec<Point> {
    if n == 1 {
        return vec![c];
    }
    if dim == 1 {
        return (0..n)
            .map(|k| [c[0] - rho + 2.0 * rho * k as f64 / (n - 1) as f64, 0.0])
            .collect();
    }
    let ring = if with_center { n - 1 } else { n };
    let mut pts: Vec<Point> = (0..ring)
        .map(|k| {
            let a = TAU * k as f64 / ring as f64;
            add(c, [rho * a.cos(), rho * a.sin()])
        })
        .collect();
    if with_center {
        pts.push(c);
    }
    pts
}

/// Best single-radius orbit about the peak.
fn structured_start(f: &AlphaConcaveFunction, n: usize, tol: f64) -> Vec<Point> {
    let c = f.peak();
    let r_max = f.effective_radius() + crate::geometry::norm(c);
    let families: &[bool] = if f.dim() == 2 && n >= 4 { &[false, true] } else { &[false] };
    let mut best: Option<(f64, Vec<Point>)> = None;
    for &with_center in families {
        let (rho, m) = maximize_scalar(
            &mut |rho| mass_at(f, &orbit(f.dim(), c, n, rho, with_center)),
            0.0,
            r_max,
            64,
            tol * r_max,
        );
        if best.as_ref().is_none_or(|b| m > b.0) {
            best = Some((m, orbit(f.dim(), c, n, rho, with_center)));
        }
    }
    best.expect("at least one family").1
}

/// One-dimensional symmetric ansatz: `N` points symmetric about the origin.
fn symmetric_1d(f: &AlphaConcaveFunction, n: usize, cfg: &OptimizerConfig) -> Vec<Point> {
    let pairs = n / 2;
    let odd = n % 2 == 1;
    let build = |r: &[f64]| -> Vec<Point> {
        let mut pts: Vec<Point> = r.iter().flat_map(|&x| [[x, 0.0], [-x, 0.0]]).collect();
        if odd {
            pts.push([0.0, 0.0]);
        }
        pts
    };
    let r_eff = f.effective_radius();
    let x0: Vec<f64> = (1..=pairs).map(|k| r_eff * k as f64 / (pairs + 1) as f64).collect();
    let res = nelder_mead(
        &mut |r| -mass_at(f, &build(r)),
        &x0,
        cfg.simplex_scale * r_eff,
        cfg.max_iterations,
        1e-13,
    );
    build(&res.x)
}

/// Maximizes `J` over minorants spanned by `N` graph points of `f`.
pub fn best_minorant(f: &AlphaConcaveFunction, n: usize, cfg: &OptimizerConfig) -> Result<MinorantSolution> {
    best_minorant_warm(f, n, cfg, None)
}

/// [`best_minorant`] with an extra restart seeded from `warm` (padded with
/// random points up to `N`).
pub fn best_minorant_warm(
    f: &AlphaConcaveFunction,
    n: usize,
    cfg: &OptimizerConfig,
    warm: Option<&[Point]>,
) -> Result<MinorantSolution> {
    if n < 1 {
        return Err(Error::InvalidN(n));
    }
    if cfg.restarts < 1 {
        return Err(Error::InvalidN(0));
    }
    let dim = f.dim();
    let (lo, hi) = f.effective_box();
    let step = cfg.simplex_scale * f.effective_diameter().max(1e-12);
    let random_points = |rng: &mut ChaCha8Rng, count: usize| -> Vec<Point> {
        (0..count)
            .map(|_| {
                let mut p = [0.0; 2];
                for k in 0..dim {
                    p[k] = if hi[k] > lo[k] { rng.gen_range(lo[k]..=hi[k]) } else { lo[k] };
                }
                f.retract(p)
            })
            .collect()
    };
    let mut starts: Vec<Vec<Point>> = Vec::with_capacity(cfg.restarts + 1);
    let mut structured = structured_start(f, n, 1e-9);
    if cfg.symmetric_ansatz && dim == 1 && f.is_radially_symmetric() {
        let sym = symmetric_1d(f, n, cfg);
        if mass_at(f, &sym) > mass_at(f, &structured) {
            structured = sym;
        }
    }
    starts.push(structured);
    if let Some(w) = warm {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(u64::MAX);
        let mut pts: Vec<Point> = w.iter().take(n).copied().collect();
        let extra = n - pts.len();
        pts.extend(random_points(&mut rng, extra));
        starts.push(pts);
    }
    for r in 1..cfg.restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(r as u64);
        starts.push(random_points(&mut rng, n));
    }
    let results: Vec<(f64, Vec<EpiPoint>, usize)> = starts
        .par_iter()
        .map(|pts| {
            let x0 = to_params(dim, pts);
            let mut objective = |x: &[f64]| -mass_at(f, &to_points(dim, x));
            let res = nelder_mead(&mut objective, &x0, step, cfg.max_iterations, 1e-13);
            let epi = graph_points(f, &to_points(dim, &res.x));
            (epi_mass(f, &epi), epi, res.evaluations)
        })
        .collect();
    let mut best = 0;
    for k in 1..results.len() {
        if better(results[k].0, &results[k].1, results[best].0, &results[best].1) {
            best = k;
        }
    }
    let second = results
        .iter()
        .enumerate()
        .filter(|(k, _)| *k != best)
        .map(|(_, r)| r.0)
        .fold(f64::NEG_INFINITY, f64::max);
    let minorant = alpha_minorant_from_epigraph(f, &results[best].1)?;
    let mass = minorant_mass(&minorant);
    let spread = if second.is_finite() { (mass.value - second).max(0.0) } else { 0.0 };
    let trace = results
        .iter()
        .enumerate()
        .map(|(restart, r)| RestartRecord {
            restart,
            mass: r.0,
            evaluations: r.2,
        })
        .collect();
    Ok(MinorantSolution {
        break_point_count: minorant.break_point_count(),
        optimizer_gap: spread + mass.error_bound,
        minorant,
        mass,
        trace,
        seed: cfg.seed,
    })
}

/// Candidate break points of [`brute_force_minorant`]: grid nodes over the
/// effective box that lie in the effective set.
fn candidate_nodes(f: &AlphaConcaveFunction, resolution: usize) -> Vec<Point> {
    let (lo, hi) = f.effective_box();
    let res = resolution.max(2);
    let at = |k: usize, i: usize| lo[k] + (hi[k] - lo[k]) * i as f64 / (res - 1) as f64;
    if f.dim() == 1 {
        (0..res).map(|i| [at(0, i), 0.0]).collect()
    } else {
        let mut out = Vec::new();
        for i in 0..res {
            for j in 0..res {
                let p = [at(0, i), at(1, j)];
                if f.in_effective_set(p) {
                    out.push(p);
                }
            }
        }
        out
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    (0..k).map(|i| (n - i) as f64 / (i + 1) as f64).product()
}

/// Calls `visit` on every `k`-subset of `0..n` in lexicographic order.
fn for_each_subset(n: usize, k: usize, visit: &mut dyn FnMut(&[usize])) {
    if k == 0 || k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        visit(&idx);
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn solution_from(f: &AlphaConcaveFunction, epi: &[EpiPoint], seed: u64, evaluations: usize) -> Result<MinorantSolution> {
    let minorant = alpha_minorant_from_epigraph(f, epi)?;
    let mass = minorant_mass(&minorant);
    Ok(MinorantSolution {
        break_point_count: minorant.break_point_count(),
        optimizer_gap: mass.error_bound,
        trace: vec![RestartRecord {
            restart: 0,
            mass: mass.value,
            evaluations,
        }],
        minorant,
        mass,
        seed,
    })
}

/// Exhaustive search over `N`-subsets of grid nodes with heights on the graph.
pub fn brute_force_minorant(f: &AlphaConcaveFunction, n: usize, resolution: usize) -> Result<MinorantSolution> {
    brute_force_minorant_with_budget(f, n, resolution, BRUTE_FORCE_BUDGET)
}

/// [`brute_force_minorant`] with an explicit enumeration budget.
pub fn brute_force_minorant_with_budget(
    f: &AlphaConcaveFunction,
    n: usize,
    resolution: usize,
    budget: f64,
) -> Result<MinorantSolution> {
    if n < 1 {
        return Err(Error::InvalidN(n));
    }
    let nodes = candidate_nodes(f, resolution);
    let k = n.min(nodes.len());
    let needed = binomial(nodes.len(), k);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let epi = graph_points(f, &nodes);
    let mut best: (f64, Vec<EpiPoint>) = (f64::NEG_INFINITY, Vec::new());
    let mut count = 0usize;
    let mut chosen = Vec::with_capacity(k);
    for_each_subset(epi.len(), k, &mut |idx| {
        count += 1;
        chosen.clear();
        chosen.extend(idx.iter().map(|&i| epi[i]));
        let m = epi_mass(f, &chosen);
        if best.0 == f64::NEG_INFINITY || better(m, &chosen, best.0, &best.1) {
            best = (m, chosen.clone());
        }
    });
    solution_from(f, &best.1, 0, count)
}

/// Exhaustive search that also lets heights range over `levels` fractions
/// `k / levels` of the graph value.
pub fn brute_force_minorant_free_heights(
    f: &AlphaConcaveFunction,
    n: usize,
    resolution: usize,
    levels: usize,
    budget: f64,
) -> Result<MinorantSolution> {
    if n < 1 {
        return Err(Error::InvalidN(n));
    }
    let levels = levels.max(1);
    let nodes: Vec<Point> = candidate_nodes(f, resolution)
        .into_iter()
        .map(|x| f.retract(x))
        .filter(|&x| f.eval(x) > 0.0)
        .collect();
    let k = n.min(nodes.len());
    let needed = binomial(nodes.len(), k) * (levels as f64).powi(k as i32);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let alpha = f.alpha();
    let mut best: (f64, Vec<EpiPoint>) = (f64::NEG_INFINITY, Vec::new());
    let mut count = 0usize;
    for_each_subset(nodes.len(), k, &mut |idx| {
        let mut level = vec![1usize; k];
        loop {
            count += 1;
            let pts: Vec<EpiPoint> = idx
                .iter()
                .zip(&level)
                .map(|(&i, &l)| {
                    let y = f.eval(nodes[i]) * l as f64 / levels as f64;
                    EpiPoint::new(nodes[i], alpha.base_of_value(y))
                })
                .collect();
            let m = epi_mass(f, &pts);
            if best.0 == f64::NEG_INFINITY || better(m, &pts, best.0, &best.1) {
                best = (m, pts);
            }
            let mut j = 0;
            while j < k && level[j] == levels {
                level[j] = 1;
                j += 1;
            }
            if j == k {
                break;
            }
            level[j] += 1;
        }
    });
    solution_from(f, &best.1, 0, count)
}

/// `G(f)` with its uncertainty.
#[derive(Debug, Clone)]
pub struct GValue {
    pub value: f64,
    pub gap: f64,
    pub total: MassResult,
    pub solution: MinorantSolution,
}

/// `J(f) - max J(p)` over minorants with at most `N` break points.
pub fn g_functional(f: &AlphaConcaveFunction, n: usize, cfg: &OptimizerConfig) -> Result<GValue> {
    let total = total_mass(f);
    let solution = best_minorant(f, n, cfg)?;
    Ok(GValue {
        value: total.value - solution.mass.value,
        gap: solution.optimizer_gap + total.error_bound,
        total,
        solution,
    })
}

/// A point `(x' + offset u, height)` of the Steiner symmetral's hypograph,
/// with `x'` the projection of `base` onto `H`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SymmetralPoint {
    pub base: Point,
    pub height: f64,
    pub offset: f64,
}

/// The minorant `p_f` of `S_H f` and its two lifts `q_f`, `r_f` below `f`.
#[derive(Debug, Clone)]
pub struct MacbeathPair {
    /// Minorant of `S_H f`; its host is `f`, from which it was symmetrized.
    pub p: AlphaMinorant,
    pub q: AlphaMinorant,
    pub r: AlphaMinorant,
}

impl MacbeathPair {
    /// `(J(p), J(q), J(r))`.
    pub fn masses(&self) -> (MassResult, MassResult, MassResult) {
        (minorant_mass(&self.p), minorant_mass(&self.q), minorant_mass(&self.r))
    }
}

/// Offsets above this, relative to the half chord, are rejected.
const SYMMETRAL_TOLERANCE: f64 = 1e-9;

/// Builds `p_f` from points of `hyp(S_H f)` and the lifts
/// `q_f` (offsets `t_i + m_i`) and `r_f` (offsets `-t_i + m_i`), where `m_i`
/// is the chord midpoint of `hyp(f)` at the point's height.
pub fn macbeath_pair(f: &AlphaConcaveFunction, h: &Hyperplane, points: &[SymmetralPoint]) -> Result<MacbeathPair> {
    let u = h.normal();
    let alpha = f.alpha();
    let mut p_epi = Vec::with_capacity(points.len());
    let mut q_pts = Vec::with_capacity(points.len());
    let mut r_pts = Vec::with_capacity(points.len());
    for (index, sp) in points.iter().enumerate() {
        let base = h.project(sp.base);
        let chord = chord_bounds(f, h, base, sp.height)?;
        let half = chord.half_length();
        if sp.offset.abs() > half + SYMMETRAL_TOLERANCE * (1.0 + half) {
            return Err(Error::PointOutsideSymmetral {
                index,
                offset: sp.offset.abs(),
                half_length: half,
            });
        }
        let t = sp.offset.clamp(-half, half);
        let mid = chord.midpoint();
        p_epi.push(EpiPoint::new(add(base, scale(u, t)), alpha.base_of_value(sp.height)));
        // clamp into the chord against rounding in `mid +- t`
        let inside = |s: f64| s.clamp(chord.lower, chord.upper);
        q_pts.push((add(base, scale(u, inside(mid + t))), sp.height));
        r_pts.push((add(base, scale(u, inside(mid - t))), sp.height));
    }
    Ok(MacbeathPair {
        p: alpha_minorant_from_epigraph(f, &p_epi)?,
        q: alpha_minorant_from_points(f, &q_pts)?,
        r: alpha_minorant_from_points(f, &r_pts)?,
    })
}

/// Outcome of [`steiner_monotonicity_check`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SteinerReport {
    /// `max(J(q_f), J(r_f)) >= J(p_f) - bound`.
    pub certificate_ok: bool,
    pub j_p: f64,
    pub j_q: f64,
    pub j_r: f64,
    pub bound: f64,
    /// Best-found masses on `f` and `S_H f` with their gaps.
    pub best_f: f64,
    pub gap_f: f64,
    pub best_symmetral: f64,
    pub gap_symmetral: f64,
}

/// Optimizes on `S_H f`, lifts the optimum through [`macbeath_pair`] and checks
/// the certificate; also reports the best-found mass on `f`.
pub fn steiner_monotonicity_check(
    f: &AlphaConcaveFunction,
    h: &Hyperplane,
    n: usize,
    cfg: &OptimizerConfig,
) -> Result<SteinerReport> {
    let sf = steiner_symmetrize(f, h)?;
    let on_sym = best_minorant(&sf, n, cfg)?;
    let on_f = best_minorant(f, n, cfg)?;
    let u = h.normal();
    let mut points = Vec::new();
    for (x, y) in on_sym.minorant.hypograph_points() {
        let base = h.project(x);
        let offset = dot(x, u) - dot(base, u);
        // the grid symmetral is approximate: move the point into the exact one
        let height = highest_chord_height(f, h, base, y);
        let Some(height) = height else { continue };
        let half = chord_bounds(f, h, base, height)?.half_length();
        points.push(SymmetralPoint {
            base,
            height,
            offset: offset.clamp(-half, half),
        });
    }
    let pair = macbeath_pair(f, h, &points)?;
    let (p, q, r) = pair.masses();
    let bound = p.error_bound + q.error_bound.max(r.error_bound);
    Ok(SteinerReport {
        certificate_ok: q.value.max(r.value) >= p.value - bound,
        j_p: p.value,
        j_q: q.value,
        j_r: r.value,
        bound,
        best_f: on_f.mass.value,
        gap_f: on_f.optimizer_gap,
        best_symmetral: on_sym.mass.value,
        gap_symmetral: on_sym.optimizer_gap,
    })
}

/// `min(y, sup{t : chord of hyp(f) through (x', t) is nonempty})`.
fn highest_chord_height(f: &AlphaConcaveFunction, h: &Hyperplane, base: Point, y: f64) -> Option<f64> {
    if chord_bounds(f, h, base, y).is_ok() {
        return Some(y);
    }
    let (mut lo, mut hi) = (0.0, y);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if chord_bounds(f, h, base, mid).is_ok() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo > 0.0).then_some(lo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functional::catalog::{named, parse_entry};

    fn entry(json: &str) -> AlphaConcaveFunction {
        parse_entry(json).unwrap().build(None).unwrap()
    }

    fn quick() -> OptimizerConfig {
        OptimizerConfig {
            restarts: 8,
            ..OptimizerConfig::default()
        }
    }

    #[test]
    fn polygon_is_its_own_best_minorant() {
        let f = named("skewed_triangle").unwrap();
        let s = best_minorant(&f, 3, &quick()).unwrap();
        assert!((s.mass.value - total_mass(&f).value).abs() < 1e-9, "{}", s.mass.value);
        assert!(s.break_point_count <= 3);
    }

    #[test]
    fn disk_hexagon() {
        let f = named("unit_disk").unwrap();
        let s = best_minorant(&f, 6, &quick()).unwrap();
        assert!((s.mass.value - 3.0 * (TAU / 6.0).sin()).abs() < 1e-3, "{}", s.mass.value);
    }

    #[test]
    fn laplace_three_points_matches_brute_force() {
        let f = named("laplace_1d").unwrap();
        let s = best_minorant(&f, 3, &quick()).unwrap();
        let b = brute_force_minorant(&f, 3, 101).unwrap();
        assert!((s.mass.value - b.mass.value).abs() < 1e-4, "{} vs {}", s.mass.value, b.mass.value);
    }

    #[test]
    fn brute_force_examples() {
        let f = entry(r#"{"alpha":"inf","kind":"indicator_polytope","dim":1,"params":{"vertices":[-1,1]}}"#);
        assert!((brute_force_minorant(&f, 2, 101).unwrap().mass.value - 2.0).abs() < 1e-12);
        assert_eq!(brute_force_minorant(&f, 1, 101).unwrap().mass.value, 0.0);
        let g = named("gaussian_2d").unwrap();
        assert!(matches!(
            brute_force_minorant_with_budget(&g, 6, 101, 1e6),
            Err(Error::BudgetExceeded { .. })
        ));
        assert_eq!(best_minorant(&g, 0, &quick()).err(), Some(Error::InvalidN(0)));
    }

    #[test]
    fn heights_on_the_graph_are_optimal_on_a_small_instance() {
        let f = named("gaussian_1d").unwrap();
        let on_graph = brute_force_minorant(&f, 3, 41).unwrap().mass.value;
        let free = brute_force_minorant_free_heights(&f, 3, 41, 4, 1e7).unwrap().mass.value;
        assert!(free <= on_graph + 1e-12, "{free} > {on_graph}");
    }

    #[test]
    fn square_defect_vanishes() {
        let f = named("unit_square").unwrap();
        let g = g_functional(&f, 4, &quick()).unwrap();
        assert!(g.value.abs() < 1e-9, "{}", g.value);
    }

    #[test]
    fn symmetric_pair_coincides_at_zero_offsets() {
        let f = named("gaussian_2d").unwrap();
        let h = Hyperplane::from_angle(0.3);
        let pts: Vec<SymmetralPoint> = [([0.5, 0.0], 0.8), ([-0.4, 0.2], 0.5), ([0.0, 1.0], 0.3), ([1.0, 1.0], 0.1)]
            .iter()
            .map(|&(b, y)| SymmetralPoint {
                base: b,
                height: y,
                offset: 0.0,
            })
            .collect();
        let pair = macbeath_pair(&f, &h, &pts).unwrap();
        let (_, q, r) = pair.masses();
        assert!((q.value - r.value).abs() < 1e-12);
    }

    #[test]
    fn macbeath_certificate_on_a_triangle() {
        let f = named("skewed_triangle").unwrap();
        let h = Hyperplane::from_angle(1.1);
        let pts: Vec<SymmetralPoint> = [([0.1, 0.1], 0.2), ([-0.2, 0.0], -0.1), ([0.0, 0.3], 0.05), ([0.3, -0.2], 0.0)]
            .iter()
            .map(|&(b, t)| SymmetralPoint {
                base: b,
                height: 1.0,
                offset: t,
            })
            .collect();
        let pair = macbeath_pair(&f, &h, &pts).unwrap();
        let (p, q, r) = pair.masses();
        assert!(p.value <= 0.5 * (q.value + r.value) + 1e-12);
        let far = SymmetralPoint {
            base: [0.0, 0.0],
            height: 1.0,
            offset: 10.0,
        };
        assert!(matches!(macbeath_pair(&f, &h, &[far]), Err(Error::PointOutsideSymmetral { .. })));
    }
}
