// SPDX-License-Identifier: Apache-2.0

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::functional::{AlphaParam, BaseFunction, GridFunction, RadialProfile};
use crate::geometry::{self, dot, quadratic_sublevel, ConvexSet, Point, ORIGIN};

/// Values below `EFFECTIVE_CUTOFF * max f` are treated as outside the support
/// when a compact working domain is needed.
pub const EFFECTIVE_CUTOFF: f64 = 1e-12;

/// An alpha-concave function `f = (1 - alpha psi)_+^{1/alpha}` (or `exp(-psi)`).
#[derive(Debug, Clone)]
pub struct AlphaConcaveFunction {
    alpha: AlphaParam,
    base: BaseFunction,
    dim: usize,
    max_value: f64,
    peak: Point,
    effective: ConvexSet,
}

/// Builds `f` from its base, checking integrability and `f(o) > 0`.
pub fn function_of_base(alpha: AlphaParam, psi: BaseFunction) -> Result<AlphaConcaveFunction> {
    AlphaConcaveFunction::new(alpha, psi)
}

/// The base `psi` with `f = function_of_base(alpha, psi)`.
pub fn base_of_function(f: &AlphaConcaveFunction) -> BaseFunction {
    f.base.clone()
}

impl AlphaConcaveFunction {
    pub fn new(alpha: AlphaParam, base: BaseFunction) -> Result<Self> {
        let dim = base.dim();
        if dim != 1 && dim != 2 {
            return Err(Error::UnsupportedDimension(dim));
        }
        check_kind(alpha, &base)?;
        let (max_value, peak) = match &base {
            BaseFunction::GridBacked(g) => (g.max_value(), g.argmax()),
            BaseFunction::Radial(r) => (r.max_value(), ORIGIN),
            other => {
                let (m, at) = other.minimum().expect("base-backed kind has a minimum");
                if alpha.base_floor() > m - 1e-12 * (1.0 + m.abs()) {
                    return Err(Error::InvalidBase(format!(
                        "base minimum {m} is below the floor 1/alpha of alpha = {alpha}"
                    )));
                }
                (alpha.value_of_base(m), at)
            }
        };
        if !(max_value > 0.0 && max_value.is_finite()) {
            return Err(Error::InvalidBase("function vanishes identically".into()));
        }
        let mut f = Self {
            alpha,
            base,
            dim,
            max_value,
            peak,
            effective: ConvexSet::Empty,
        };
        if !(f.eval(ORIGIN) > 0.0) {
            return Err(Error::OriginOutsideSupport);
        }
        f.effective = f.superlevel_set(EFFECTIVE_CUTOFF * max_value);
        if f.effective.volume() <= 0.0 {
            return Err(Error::InvalidBase("support is not full-dimensional".into()));
        }
        Ok(f)
    }

    /// Wraps a grid of samples with the declared concavity `alpha`.
    pub fn from_grid(alpha: AlphaParam, grid: GridFunction) -> Result<Self> {
        Self::new(alpha, BaseFunction::GridBacked(Arc::new(grid)))
    }

    pub fn from_radial(alpha: AlphaParam, profile: RadialProfile) -> Result<Self> {
        Self::new(alpha, BaseFunction::Radial(Arc::new(profile)))
    }

    pub fn alpha(&self) -> AlphaParam {
        self.alpha
    }

    pub fn base(&self) -> &BaseFunction {
        &self.base
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn max_value(&self) -> f64 {
        self.max_value
    }

    /// A point where the maximum is attained.
    pub fn peak(&self) -> Point {
        self.peak
    }

    pub fn grid(&self) -> Option<&Arc<GridFunction>> {
        match &self.base {
            BaseFunction::GridBacked(g) => Some(g),
            _ => None,
        }
    }

    fn coerce(&self, x: Point) -> Point {
        if self.dim == 1 {
            [x[0], 0.0]
        } else {
            x
        }
    }

    pub fn eval(&self, x: Point) -> f64 {
        let x = self.coerce(x);
        match &self.base {
            BaseFunction::GridBacked(g) => g.eval(x),
            BaseFunction::Radial(r) => r.eval(x),
            base => self
                .alpha
                .value_of_base(base.value(x).expect("base-backed kind")),
        }
    }

    /// `psi(x)`, recovered through the alpha transform for value-backed kinds.
    pub fn psi(&self, x: Point) -> f64 {
        let x = self.coerce(x);
        match self.base.value(x) {
            Some(v) => v,
            None => self.alpha.base_of_value(self.eval(x)),
        }
    }

    /// Exact descriptor of `{f >= t}` (a grid mask for grid-backed functions).
    pub fn superlevel_set(&self, t: f64) -> ConvexSet {
        if !(t > 0.0) || t > self.max_value {
            return ConvexSet::Empty;
        }
        match &self.base {
            BaseFunction::GridBacked(g) => ConvexSet::GridMask {
                grid: g.clone(),
                level: t,
            },
            BaseFunction::Radial(r) => {
                let rad = r.level_radius(t).expect("t is below the maximum");
                if self.dim == 1 {
                    ConvexSet::Interval { lo: -rad, hi: rad }
                } else if rad == 0.0 {
                    ConvexSet::Polygon(vec![ORIGIN])
                } else {
                    let s = 1.0 / (rad * rad);
                    ConvexSet::Ellipse {
                        center: ORIGIN,
                        shape: [[s, 0.0], [0.0, s]],
                    }
                }
            }
            base => base
                .sublevel(self.alpha.base_of_value(t))
                .expect("base-backed kind"),
        }
    }

    /// `vol{f >= t}` with its error bound (zero for exact descriptors).
    pub fn levelset_volume(&self, t: f64) -> (f64, f64) {
        let set = self.superlevel_set(t);
        (set.volume(), set.volume_error())
    }

    /// `{s : f(p0 + s d) >= t}` for `t > 0`.
    pub fn chord(&self, p0: Point, d: Point, t: f64) -> Option<(f64, f64)> {
        if !(t > 0.0) || t > self.max_value {
            return None;
        }
        let (p0, d) = (self.coerce(p0), self.coerce(d));
        match &self.base {
            BaseFunction::GridBacked(g) => g.chord(p0, d, t),
            BaseFunction::Radial(r) => {
                let rad = r.level_radius(t)?;
                quadratic_sublevel(dot(d, d), 2.0 * dot(d, p0), dot(p0, p0) - rad * rad)
            }
            base => base
                .chord(p0, d, self.alpha.base_of_value(t))
                .expect("base-backed kind"),
        }
    }

    /// `{f >= EFFECTIVE_CUTOFF * max f}`, the compact working domain.
    pub fn effective_set(&self) -> &ConvexSet {
        &self.effective
    }

    /// Bounding box of the effective set.
    pub fn effective_box(&self) -> (Point, Point) {
        match &self.effective {
            ConvexSet::GridMask { grid, level } => grid
                .mask_bounding_box(*level)
                .expect("effective set is nonempty"),
            set => set.bounding_box().expect("effective set is nonempty"),
        }
    }

    /// Radius of a centered ball containing the effective set.
    pub fn effective_radius(&self) -> f64 {
        let (lo, hi) = self.effective_box();
        let mut r: f64 = 0.0;
        for a in [lo[0], hi[0]] {
            for b in [lo[1], hi[1]] {
                r = r.max(geometry::norm([a, b]));
            }
        }
        r
    }

    /// Diameter of the effective bounding box.
    pub fn effective_diameter(&self) -> f64 {
        let (lo, hi) = self.effective_box();
        geometry::norm(geometry::sub(hi, lo))
    }

    pub fn in_effective_set(&self, x: Point) -> bool {
        self.effective.contains(self.coerce(x))
    }

    /// Moves `x` toward the origin onto the effective set (identity inside it).
    pub fn retract(&self, x: Point) -> Point {
        let x = self.coerce(x);
        if self.in_effective_set(x) {
            return x;
        }
        let (mut inside, mut outside) = (0.0, 1.0);
        for _ in 0..60 {
            let mid = 0.5 * (inside + outside);
            if self.in_effective_set(geometry::scale(x, mid)) {
                inside = mid;
            } else {
                outside = mid;
            }
        }
        geometry::scale(x, inside)
    }

    /// Structural spherical symmetry about the origin.
    pub fn is_radially_symmetric(&self) -> bool {
        self.base.is_radial()
    }
}

fn check_kind(alpha: AlphaParam, base: &BaseFunction) -> Result<()> {
    let compact = matches!(
        base,
        BaseFunction::IndicatorOfPolytope(_)
            | BaseFunction::IndicatorOfEllipsoid(_)
            | BaseFunction::PiecewiseAffine(_)
            | BaseFunction::GridBacked(_)
            | BaseFunction::Radial(_)
    );
    match alpha {
        AlphaParam::PosInf => {
            if !compact {
                return Err(Error::InvalidAlpha(format!(
                    "alpha = inf needs an indicator, piecewise-affine or grid base, got {}",
                    base.kind_name()
                )));
            }
        }
        AlphaParam::Finite(a) if a < 0.0 => match base {
            BaseFunction::Quadratic(q) => {
                // (1 + |a| psi)^{-1/|a|} decays like |x|^{-2/|a|}; integrable iff 2/|a| > n
                let _ = q;
                let n = base.dim() as f64;
                if !(1.0 / -a > n / 2.0) {
                    return Err(Error::NonIntegrable(format!(
                        "alpha = {a} with a quadratic base needs 1/|alpha| > n/2"
                    )));
                }
            }
            BaseFunction::Cone(_) => {
                return Err(Error::NonIntegrable(format!(
                    "alpha = {a} needs a base with super-linear growth"
                )));
            }
            _ => {}
        },
        AlphaParam::Finite(_) => {}
    }
    if let BaseFunction::PiecewiseAffine(p) = base {
        if p.is_degenerate() {
            return Err(Error::DegenerateDomain);
        }
    }
    Ok(())
}
