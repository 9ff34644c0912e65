// SPDX-License-Identifier: Apache-2.0

//! One experiment: the CSV row, the log details and optional artifacts.

use std::f64::consts::TAU;

use minorantlab::approx::{best_minorant, g_functional, steiner_monotonicity_check, MinorantSolution, OptimizerConfig};
use minorantlab::functional::{AlphaConcaveFunction, Frame, GridFunction};
use minorantlab::measure::{total_mass, MassResult};
use minorantlab::symmetry::{
    random_hyperplane_sequence, rearrange, steiner_symmetrize, symmetrization_chain, Hyperplane, GRID_RESOLUTION,
};
use serde::Serialize;
use serde_json::{json, Value};

use crate::plot::Series;
use crate::spec::{Command, ExperimentSpec};
use crate::Result;

/// Step-to-step rise of the chain distance tolerated as grid noise.
pub const CHAIN_NOISE: f64 = 1e-3;

/// A results row; `None` prints as an empty field.
///
/// The `fstar` columns hold the symmetrized counterpart of `f`: the
/// rearrangement, or the Steiner symmetral for symmetrize and macbeath-pair.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub experiment: String,
    pub function_id: String,
    pub alpha: String,
    pub n: usize,
    #[serde(rename = "N")]
    pub big_n: Option<usize>,
    #[serde(rename = "J_f")]
    pub j_f: Option<f64>,
    #[serde(rename = "J_fstar")]
    pub j_fstar: Option<f64>,
    pub bestmass_f: Option<f64>,
    pub bestmass_fstar: Option<f64>,
    #[serde(rename = "G_f")]
    pub g_f: Option<f64>,
    #[serde(rename = "G_fstar")]
    pub g_fstar: Option<f64>,
    pub gap: Option<f64>,
    pub certificate_ok: bool,
    pub seed: u64,
}

#[derive(Debug)]
pub struct Outcome {
    pub row: Row,
    pub details: Value,
    pub series: Option<Series>,
    pub minorants: Vec<(String, Value)>,
    pub grid: Option<GridFunction>,
}

fn optimizer(spec: &ExperimentSpec, symmetric: bool) -> OptimizerConfig {
    let base = OptimizerConfig::default();
    OptimizerConfig {
        seed: spec.seed,
        restarts: spec.restarts.unwrap_or(base.restarts),
        symmetric_ansatz: symmetric,
        ..base
    }
}

fn hyperplane(spec: &ExperimentSpec, dim: usize) -> Result<Hyperplane> {
    Ok(match spec.angle {
        Some(theta) if dim == 2 => Hyperplane::from_angle(theta),
        _ => random_hyperplane_sequence(spec.seed, dim, 1)?.remove(0),
    })
}

fn mass_json(m: &MassResult) -> Value {
    json!({ "value": m.value, "error_bound": m.error_bound, "method": m.method })
}

fn within(a: &MassResult, b: &MassResult) -> bool {
    (a.value - b.value).abs() <= a.error_bound + b.error_bound
}

/// Samples a function on the default centered grid.
fn sample(f: &AlphaConcaveFunction) -> Result<GridFunction> {
    let r = 1.1 * f.effective_radius();
    let (lo, hi) = if f.dim() == 1 { ([-r, 0.0], [r, 0.0]) } else { ([-r, -r], [r, r]) };
    Ok(GridFunction::from_fn(
        f.dim(),
        Frame::IDENTITY,
        lo,
        hi,
        [GRID_RESOLUTION, GRID_RESOLUTION],
        0.0,
        |x| f.eval(x),
    )?)
}

fn grid_of(f: &AlphaConcaveFunction) -> Result<GridFunction> {
    match f.grid() {
        Some(g) if g.frame().is_identity(g.dim()) => Ok((**g).clone()),
        Some(g) => Ok(g.to_axis_aligned(GRID_RESOLUTION)?),
        None => sample(f),
    }
}

/// G of the ball with volume `area` and `n` vertices (2D), or 0 on a segment.
fn polygon_oracle(dim: usize, area: f64, n: usize) -> Option<f64> {
    match (dim, n) {
        (1, n) if n >= 2 => Some(0.0),
        (2, n) if n >= 3 => Some(area * (1.0 - n as f64 * (TAU / n as f64).sin() / TAU)),
        _ => None,
    }
}

fn linearization_json(s: &MinorantSolution) -> Value {
    serde_json::to_value(s.minorant.linearization().to_json()).unwrap_or(Value::Null)
}

fn solution_json(s: &MinorantSolution) -> Value {
    json!({
        "mass": mass_json(&s.mass),
        "break_point_count": s.break_point_count,
        "optimizer_gap": s.optimizer_gap,
    })
}

pub fn run(spec: &ExperimentSpec) -> Result<Outcome> {
    let f = spec.function.build(spec.base_dir.as_deref())?;
    let j_f = total_mass(&f);
    let mut row = Row {
        experiment: spec.command.name().to_string(),
        function_id: spec.function_id.clone(),
        alpha: f.alpha().to_string(),
        n: f.dim(),
        big_n: None,
        j_f: Some(j_f.value),
        j_fstar: None,
        bestmass_f: None,
        bestmass_fstar: None,
        g_f: None,
        g_fstar: None,
        gap: None,
        certificate_ok: true,
        seed: spec.seed,
    };
    let mut out = Outcome {
        row: row.clone(),
        details: Value::Null,
        series: None,
        minorants: Vec::new(),
        grid: None,
    };
    match spec.command {
        Command::VerifyTheorem | Command::RecoverMacbeath => {
            let fstar = rearrange(&f)?;
            let on_f = g_functional(&f, spec.n, &optimizer(spec, false))?;
            let on_star = g_functional(&fstar, spec.n, &optimizer(spec, true))?;
            let gap = on_f.gap + on_star.gap;
            row.big_n = Some(spec.n);
            row.j_fstar = Some(on_star.total.value);
            row.bestmass_f = Some(on_f.solution.mass.value);
            row.bestmass_fstar = Some(on_star.solution.mass.value);
            row.g_f = Some(on_f.value);
            row.g_fstar = Some(on_star.value);
            row.gap = Some(gap);
            row.certificate_ok = on_f.value <= on_star.value + gap;
            let oracle = polygon_oracle(f.dim(), on_star.total.value, spec.n);
            out.details = json!({
                "f": solution_json(&on_f.solution),
                "fstar": solution_json(&on_star.solution),
                "J_f": mass_json(&on_f.total),
                "J_fstar": mass_json(&on_star.total),
                "G_ball_oracle": oracle,
            });
            out.minorants = vec![
                ("f".into(), linearization_json(&on_f.solution)),
                ("fstar".into(), linearization_json(&on_star.solution)),
            ];
            if spec.command == Command::RecoverMacbeath {
                let first = if f.dim() == 1 { 2 } else { 3 };
                let mut points = Vec::new();
                for k in first..=spec.n.max(first) {
                    let g = if k == spec.n { on_f.value } else { g_functional(&f, k, &optimizer(spec, false))?.value };
                    points.push((k as f64, g));
                }
                out.series = Some(Series::new("G versus N", "N", "G", points));
            }
        }
        Command::MacbeathPair => {
            let h = hyperplane(spec, f.dim())?;
            let report = steiner_monotonicity_check(&f, &h, spec.n, &optimizer(spec, false))?;
            let symmetral = steiner_symmetrize(&f, &h)?;
            row.big_n = Some(spec.n);
            row.j_fstar = Some(total_mass(&symmetral).value);
            row.bestmass_f = Some(report.best_f);
            row.bestmass_fstar = Some(report.best_symmetral);
            row.g_f = Some(j_f.value - report.best_f);
            row.g_fstar = Some(row.j_fstar.unwrap() - report.best_symmetral);
            row.gap = Some(report.bound);
            row.certificate_ok = report.certificate_ok;
            out.details = json!({
                "hyperplane_normal": h.normal(),
                "J_p": report.j_p,
                "J_q": report.j_q,
                "J_r": report.j_r,
                "bound": report.bound,
                "gap_f": report.gap_f,
                "gap_symmetral": report.gap_symmetral,
            });
        }
        Command::SteinerChain => {
            let hs = random_hyperplane_sequence(spec.seed, f.dim(), spec.steps)?;
            let chain = symmetrization_chain(&f, &hs, true)?;
            let j_star = total_mass(&chain.rearrangement);
            let j_end = total_mass(&chain.function);
            let d = &chain.distances;
            let rise = d.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max);
            row.j_fstar = Some(j_star.value);
            row.certificate_ok = rise <= CHAIN_NOISE && within(&j_end, &j_f);
            out.details = json!({
                "steps": spec.steps,
                "l1_distance": d,
                "final_l1_over_J": d.last().map(|v| v / j_f.value),
                "largest_rise": rise,
                "J_final": mass_json(&j_end),
            });
            let points = d.iter().enumerate().map(|(k, &v)| ((k + 1) as f64, v)).collect();
            out.series = Some(Series::new("L1 distance to the rearrangement", "step", "L1 distance", points));
        }
        Command::Minorant => {
            let s = best_minorant(&f, spec.n, &optimizer(spec, false))?;
            row.big_n = Some(spec.n);
            row.bestmass_f = Some(s.mass.value);
            row.g_f = Some(j_f.value - s.mass.value);
            row.gap = Some(s.optimizer_gap + j_f.error_bound);
            row.certificate_ok = row.g_f.unwrap() >= -row.gap.unwrap();
            out.details = json!({ "f": solution_json(&s), "trace": s.trace });
            let points = s.trace.iter().map(|r| (r.restart as f64, r.mass)).collect();
            out.series = Some(Series::new("best mass per restart", "restart", "mass", points));
            out.minorants = vec![("f".into(), linearization_json(&s))];
        }
        Command::Rearrange => {
            let fstar = rearrange(&f)?;
            let j_star = total_mass(&fstar);
            row.j_fstar = Some(j_star.value);
            row.certificate_ok = within(&j_star, &j_f);
            out.details = json!({ "J_f": mass_json(&j_f), "J_fstar": mass_json(&j_star) });
            out.grid = Some(grid_of(&fstar)?);
        }
        Command::Symmetrize => {
            let h = hyperplane(spec, f.dim())?;
            let s = steiner_symmetrize(&f, &h)?;
            let j_s = total_mass(&s);
            row.j_fstar = Some(j_s.value);
            row.certificate_ok = within(&j_s, &j_f);
            out.details = json!({
                "hyperplane_normal": h.normal(),
                "J_f": mass_json(&j_f),
                "J_symmetral": mass_json(&j_s),
            });
            out.grid = Some(grid_of(&s)?);
        }
    }
    out.row = row;
    Ok(out)
}
