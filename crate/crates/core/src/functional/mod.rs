// SPDX-License-Identifier: Apache-2.0

//! Alpha-concave function models.

mod alpha;
mod base;
pub mod catalog;
mod function;
mod grid;
mod radial;

pub use alpha::{alpha_mean, AlphaParam};
pub use base::{unit_ball_volume, BaseFunction, Cone, ConvexPolytope, Ellipsoid, Gauge, Quadratic};
pub use function::{base_of_function, function_of_base, AlphaConcaveFunction, EFFECTIVE_CUTOFF};
pub use grid::{pairwise_sum, Frame, GridFunction, GridJson};
pub use radial::RadialProfile;
