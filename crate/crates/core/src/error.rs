// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid alpha parameter: {0}")]
    InvalidAlpha(String),

    #[error("alpha-mean arguments must be positive (u = {u}, v = {v})")]
    NonPositiveMeanArgument { u: f64, v: f64 },

    #[error("alpha-mean weights must be nonnegative and sum to 1 (s = {s}, t = {t})")]
    WeightsNotNormalized { s: f64, t: f64 },

    #[error("unsupported dimension {0}; only n = 1 and n = 2 are implemented")]
    UnsupportedDimension(usize),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid base function: {0}")]
    InvalidBase(String),

    #[error("function is not integrable: {0}")]
    NonIntegrable(String),

    #[error("the origin does not lie in the support of the function")]
    OriginOutsideSupport,

    #[error("point set spans a degenerate domain")]
    DegenerateDomain,

    #[error("too many distinct points for the hull ({0} > 64)")]
    TooManyPoints(usize),

    #[error("epigraph point ({x:?}, {t}) lies below the base value {psi}")]
    PointBelowEpigraph { x: Vec<f64>, t: f64, psi: f64 },

    #[error("hypograph point ({x:?}, {y}) lies above the graph value {fx}")]
    PointAboveGraph { x: Vec<f64>, y: f64, fx: f64 },

    #[error("hypograph point at {0:?} has zero height")]
    ZeroHeight(Vec<f64>),

    #[error("degenerate simplex")]
    DegenerateSimplex,

    #[error("chord is empty at the requested base point")]
    EmptyChord,

    #[error("point {index} lies outside the Steiner symmetral (|offset| = {offset} > half chord {half_length})")]
    PointOutsideSymmetral {
        index: usize,
        offset: f64,
        half_length: f64,
    },

    #[error("invalid number of break points N = {0}")]
    InvalidN(usize),

    #[error("enumeration needs {needed} candidates, budget is {budget}")]
    BudgetExceeded { needed: f64, budget: f64 },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("catalog error: {0}")]
    Catalog(String),

    #[error("empty series")]
    EmptySeries,

    #[error("{context}: {message}")]
    Io { context: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
