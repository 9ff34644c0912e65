// SPDX-License-Identifier: Apache-2.0

//! JSON ingestion of catalog entries and the built-in named catalog.
//!
//! An entry is `{"alpha": number | "inf", "kind": ..., "params": {...}, "dim": 1 | 2}`.
//! Recognized kinds and parameters:
//!
//! * `quadratic`: `Q` (number in 1D, 2x2 matrix in 2D), optional `center`.
//! * `cone`: either `rate` (Euclidean gauge), `slopes` (`[left, right]` in 1D,
//!   `[+x, -x, +y, -y]` in 2D) or `gradients`; optional `walls` and `apex`.
//! * `indicator_polytope`: `vertices`.
//! * `indicator_ellipsoid`: `radius` or `Q`, optional `center`.
//! * `piecewise_affine`: `points`, a list of `{"x": [...], "t": number}`.
//! * `grid`: `path` to a `.grid` or `.json` file, or inline `box`,
//!   `resolution`, `values`.

use std::f64::consts::PI;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::functional::{
    AlphaConcaveFunction, AlphaParam, BaseFunction, Cone, ConvexPolytope, Ellipsoid, Gauge,
    GridFunction, GridJson, Quadratic,
};
use crate::geometry::Point;
use crate::hull::{EpiPoint, InnerLinearization};

/// A catalog entry as it appears in JSON.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub alpha: AlphaParam,
    pub kind: String,
    #[serde(default)]
    pub params: Value,
    pub dim: usize,
}

fn cat(msg: impl Into<String>) -> Error {
    Error::Catalog(msg.into())
}

fn number(v: &Value, what: &str) -> Result<f64> {
    v.as_f64().ok_or_else(|| cat(format!("{what} must be a number")))
}

/// A point given as a number (1D) or an array of `dim` numbers.
fn point(v: &Value, dim: usize, what: &str) -> Result<Point> {
    if let Some(x) = v.as_f64() {
        if dim == 1 {
            return Ok([x, 0.0]);
        }
    }
    let arr = v
        .as_array()
        .ok_or_else(|| cat(format!("{what} must be an array of {dim} numbers")))?;
    if arr.len() != dim {
        return Err(cat(format!("{what} must have {dim} coordinates")));
    }
    let mut p = [0.0; 2];
    for (k, c) in arr.iter().enumerate() {
        p[k] = number(c, what)?;
    }
    Ok(p)
}

fn points(v: &Value, dim: usize, what: &str) -> Result<Vec<Point>> {
    v.as_array()
        .ok_or_else(|| cat(format!("{what} must be a list of points")))?
        .iter()
        .map(|p| point(p, dim, what))
        .collect()
}

fn matrix(v: &Value, dim: usize) -> Result<[[f64; 2]; 2]> {
    if dim == 1 {
        if let Some(q) = v.as_f64() {
            return Ok([[q, 0.0], [0.0, 0.0]]);
        }
        if let Some(q) = v.as_array().and_then(|a| a.first()).and_then(|r| {
            r.as_f64()
                .or_else(|| r.as_array().and_then(|r| r.first()).and_then(Value::as_f64))
        }) {
            return Ok([[q, 0.0], [0.0, 0.0]]);
        }
        return Err(cat("Q must be a positive number in 1D"));
    }
    let rows = points(v, 2, "Q")?;
    if rows.len() != 2 {
        return Err(cat("Q must be a 2x2 matrix"));
    }
    Ok([rows[0], rows[1]])
}

fn optional_point(params: &Value, key: &str, dim: usize) -> Result<Point> {
    match params.get(key) {
        None | Some(Value::Null) => Ok([0.0, 0.0]),
        Some(v) => point(v, dim, key),
    }
}

impl CatalogEntry {
    /// Builds the function. Relative grid paths resolve against `base_dir`.
    pub fn build(&self, base_dir: Option<&Path>) -> Result<AlphaConcaveFunction> {
        let dim = self.dim;
        if dim != 1 && dim != 2 {
            return Err(Error::UnsupportedDimension(dim));
        }
        let p = &self.params;
        let base = match self.kind.as_str() {
            "quadratic" => {
                let q = matrix(p.get("Q").ok_or_else(|| cat("quadratic needs Q"))?, dim)?;
                BaseFunction::Quadratic(Quadratic::new(dim, q, optional_point(p, "center", dim)?)?)
            }
            "cone" => {
                let apex = optional_point(p, "apex", dim)?;
                let walls = match p.get("walls") {
                    Some(w) => points(w, dim, "walls")?,
                    None => Vec::new(),
                };
                let gauge = if let Some(rate) = p.get("rate") {
                    Gauge::Euclidean {
                        rate: number(rate, "rate")?,
                    }
                } else if let Some(slopes) = p.get("slopes") {
                    let s: Vec<f64> = slopes
                        .as_array()
                        .ok_or_else(|| cat("slopes must be a list"))?
                        .iter()
                        .map(|v| number(v, "slopes"))
                        .collect::<Result<_>>()?;
                    if s.len() != 2 * dim || s.iter().any(|v| !(*v > 0.0)) {
                        return Err(cat(format!("slopes needs {} positive rates", 2 * dim)));
                    }
                    let gradients = if dim == 1 {
                        vec![[-s[0], 0.0], [s[1], 0.0]]
                    } else {
                        vec![[s[0], 0.0], [-s[1], 0.0], [0.0, s[2]], [0.0, -s[3]]]
                    };
                    Gauge::Polyhedral { gradients, walls }
                } else if let Some(g) = p.get("gradients") {
                    Gauge::Polyhedral {
                        gradients: points(g, dim, "gradients")?,
                        walls,
                    }
                } else {
                    return Err(cat("cone needs rate, slopes or gradients"));
                };
                BaseFunction::Cone(Cone::new(dim, gauge, apex)?)
            }
            "indicator_polytope" => {
                let v = points(p.get("vertices").ok_or_else(|| cat("polytope needs vertices"))?, dim, "vertices")?;
                BaseFunction::IndicatorOfPolytope(ConvexPolytope::new(dim, &v)?)
            }
            "indicator_ellipsoid" => {
                let center = optional_point(p, "center", dim)?;
                let e = if let Some(r) = p.get("radius") {
                    Ellipsoid::ball(dim, number(r, "radius")?, center)?
                } else {
                    let q = matrix(p.get("Q").ok_or_else(|| cat("ellipsoid needs radius or Q"))?, dim)?;
                    Ellipsoid::new(dim, q, center)?
                };
                BaseFunction::IndicatorOfEllipsoid(e)
            }
            "piecewise_affine" => {
                let list = p
                    .get("points")
                    .and_then(Value::as_array)
                    .ok_or_else(|| cat("piecewise_affine needs points"))?;
                let mut epi = Vec::with_capacity(list.len());
                for e in list {
                    let x = point(e.get("x").ok_or_else(|| cat("point needs x"))?, dim, "x")?;
                    let t = number(e.get("t").ok_or_else(|| cat("point needs t"))?, "t")?;
                    epi.push(EpiPoint::new(x, t));
                }
                BaseFunction::PiecewiseAffine(Arc::new(InnerLinearization::build(dim, &epi, false)?))
            }
            "grid" => {
                let grid = if let Some(path) = p.get("path").and_then(Value::as_str) {
                    let path = match base_dir {
                        Some(dir) if Path::new(path).is_relative() => dir.join(path),
                        _ => Path::new(path).to_path_buf(),
                    };
                    read_grid(&path)?
                } else {
                    let mut json: GridJson =
                        serde_json::from_value(p.clone()).map_err(|e| cat(e.to_string()))?;
                    json.dim = dim;
                    GridFunction::from_json(&json)?
                };
                if grid.dim() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        got: grid.dim(),
                    });
                }
                BaseFunction::GridBacked(Arc::new(grid))
            }
            other => return Err(cat(format!("unknown kind {other:?}"))),
        };
        AlphaConcaveFunction::new(self.alpha, base)
    }
}

/// Reads a grid by extension: `.json` as JSON, anything else as the binary layout.
pub fn read_grid(path: &Path) -> Result<GridFunction> {
    let io = |e: std::io::Error| Error::Io {
        context: path.display().to_string(),
        message: e.to_string(),
    };
    if path.extension().is_some_and(|e| e == "json") {
        let text = std::fs::read_to_string(path).map_err(io)?;
        let json: GridJson = serde_json::from_str(&text).map_err(|e| cat(e.to_string()))?;
        GridFunction::from_json(&json)
    } else {
        let file = std::fs::File::open(path).map_err(io)?;
        GridFunction::read_binary(std::io::BufReader::new(file))
    }
}

/// Writes a grid by extension (see [`read_grid`]).
pub fn write_grid(grid: &GridFunction, path: &Path) -> Result<()> {
    let io = |e: std::io::Error| Error::Io {
        context: path.display().to_string(),
        message: e.to_string(),
    };
    if path.extension().is_some_and(|e| e == "json") {
        let text = serde_json::to_string(&grid.to_json()).map_err(|e| cat(e.to_string()))?;
        std::fs::write(path, text).map_err(io)
    } else {
        let file = std::fs::File::create(path).map_err(io)?;
        let mut w = std::io::BufWriter::new(file);
        grid.write_binary(&mut w).map_err(io)?;
        std::io::Write::flush(&mut w).map_err(io)
    }
}

pub fn parse_entry(text: &str) -> Result<CatalogEntry> {
    serde_json::from_str(text).map_err(|e| cat(e.to_string()))
}

/// Identifiers of the built-in catalog.
pub const NAMED: &[&str] = &[
    "gaussian_1d",
    "shifted_gaussian_1d",
    "laplace_1d",
    "one_sided_exponential",
    "asymmetric_cone_1d",
    "tent_1d",
    "asymmetric_tent_1d",
    "cauchy_1d",
    "interval",
    "gaussian_2d",
    "anisotropic_gaussian_2d",
    "sheared_gaussian_2d",
    "asymmetric_gaussian_2d",
    "asymmetric_cone_2d",
    "skewed_triangle",
    "unit_square",
    "unit_disk",
    "square_area_pi",
];

/// The JSON entry for a built-in catalog id.
pub fn named_entry(id: &str) -> Result<CatalogEntry> {
    let json = match id {
        "gaussian_1d" => r#"{"alpha":0,"kind":"quadratic","dim":1,"params":{"Q":1}}"#.to_string(),
        "shifted_gaussian_1d" => {
            r#"{"alpha":0,"kind":"quadratic","dim":1,"params":{"Q":1,"center":0.7}}"#.to_string()
        }
        "laplace_1d" => r#"{"alpha":0,"kind":"cone","dim":1,"params":{"rate":1}}"#.to_string(),
        "one_sided_exponential" => {
            r#"{"alpha":0,"kind":"cone","dim":1,"params":{"gradients":[1],"walls":[-1]}}"#.to_string()
        }
        "asymmetric_cone_1d" => {
            r#"{"alpha":0,"kind":"cone","dim":1,"params":{"slopes":[1,3],"apex":0.3}}"#.to_string()
        }
        "tent_1d" => r#"{"alpha":1,"kind":"cone","dim":1,"params":{"rate":1}}"#.to_string(),
        "asymmetric_tent_1d" => {
            r#"{"alpha":1,"kind":"cone","dim":1,"params":{"slopes":[1,2],"apex":0.2}}"#.to_string()
        }
        "cauchy_1d" => r#"{"alpha":-1,"kind":"quadratic","dim":1,"params":{"Q":1}}"#.to_string(),
        "interval" => {
            r#"{"alpha":"inf","kind":"indicator_polytope","dim":1,"params":{"vertices":[-1,2]}}"#.to_string()
        }
        "gaussian_2d" => {
            r#"{"alpha":0,"kind":"quadratic","dim":2,"params":{"Q":[[1,0],[0,1]]}}"#.to_string()
        }
        "anisotropic_gaussian_2d" => {
            r#"{"alpha":0,"kind":"quadratic","dim":2,"params":{"Q":[[1,0],[0,4]]}}"#.to_string()
        }
        "sheared_gaussian_2d" => {
            r#"{"alpha":0,"kind":"quadratic","dim":2,"params":{"Q":[[1,0.6],[0.6,0.8]],"center":[0.3,-0.2]}}"#
                .to_string()
        }
        "asymmetric_gaussian_2d" => {
            r#"{"alpha":0,"kind":"quadratic","dim":2,"params":{"Q":[[1.5,0.5],[0.5,0.4]],"center":[0.5,-0.3]}}"#
                .to_string()
        }
        "asymmetric_cone_2d" => {
            r#"{"alpha":0,"kind":"cone","dim":2,"params":{"gradients":[[1,0.2],[-2,0.5],[0.3,1],[0,-0.5]],"apex":[0.2,-0.1]}}"#
                .to_string()
        }
        "skewed_triangle" => {
            r#"{"alpha":"inf","kind":"indicator_polytope","dim":2,"params":{"vertices":[[-0.5,-0.4],[1.2,-0.3],[0.1,0.9]]}}"#
                .to_string()
        }
        "unit_square" => {
            r#"{"alpha":"inf","kind":"indicator_polytope","dim":2,"params":{"vertices":[[-0.5,-0.5],[0.5,-0.5],[0.5,0.5],[-0.5,0.5]]}}"#
                .to_string()
        }
        "unit_disk" => {
            r#"{"alpha":"inf","kind":"indicator_ellipsoid","dim":2,"params":{"radius":1}}"#.to_string()
        }
        "square_area_pi" => {
            let h = 0.5 * PI.sqrt();
            format!(
                r#"{{"alpha":"inf","kind":"indicator_polytope","dim":2,"params":{{"vertices":[[{m},{m}],[{h},{m}],[{h},{h}],[{m},{h}]]}}}}"#,
                m = -h,
                h = h
            )
        }
        other => return Err(cat(format!("unknown catalog id {other:?}"))),
    };
    parse_entry(&json)
}

/// Builds a built-in catalog function.
pub fn named(id: &str) -> Result<AlphaConcaveFunction> {
    named_entry(id)?.build(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_named_entry_builds() {
        for id in NAMED {
            let f = named(id).unwrap_or_else(|e| panic!("{id}: {e}"));
            assert!(f.eval([0.0, 0.0]) > 0.0, "{id}");
        }
    }

    #[test]
    fn unknown_id_and_kind() {
        assert!(named("nope").is_err());
        let e = parse_entry(r#"{"alpha":0,"kind":"spline","dim":1,"params":{}}"#).unwrap();
        assert!(matches!(e.build(None), Err(Error::Catalog(_))));
    }

    #[test]
    fn one_sided_exponential_values() {
        let f = named("one_sided_exponential").unwrap();
        assert_eq!(f.eval([-0.1, 0.0]), 0.0);
        assert!((f.eval([1.0, 0.0]) - (-1.0f64).exp()).abs() < 1e-16);
    }

    #[test]
    fn inline_grid_entry() {
        let e = parse_entry(
            r#"{"alpha":0,"kind":"grid","dim":1,"params":{"box":[[-1,1]],"resolution":[3],"values":[0.5,1,0.5]}}"#,
        )
        .unwrap();
        let f = e.build(None).unwrap();
        assert_eq!(f.eval([0.5, 0.0]), 0.75);
    }

    #[test]
    fn square_area() {
        let f = named("square_area_pi").unwrap();
        assert!((f.effective_set().volume() - PI).abs() < 1e-14);
    }
}
