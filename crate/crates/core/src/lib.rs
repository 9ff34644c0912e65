// SPDX-License-Identifier: Apache-2.0

//! Alpha-concave functions and their polytopal approximation.
//!
//! The crate models alpha-concave functions on the line and the plane, builds
//! inner linearizations and the alpha-affine minorants they induce, integrates
//! those minorants exactly, and implements Steiner symmetrization and the
//! symmetric decreasing rearrangement. On top of these it searches for best
//! minorants with a bounded number of break points.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod approx;
pub mod error;
pub mod functional;
pub mod geometry;
pub mod hull;
pub mod lp;
pub mod measure;
pub mod optimize;
pub mod quadrature;
pub mod symmetry;

pub use error::{Error, Result};
