//! Finite metric spaces, ε-nets of model manifolds and Gromov–Hausdorff
//! distances between finite spaces.

mod distance;
mod net;
mod space;

use thiserror::Error;

use crate::geometry::GeometryError;

pub use distance::{gh_distance_exact, gh_lower_bound, EXACT_MAX_POINTS};
pub use net::{epsilon_net, EpsilonNet, MAX_POOL};
pub use space::FiniteMetricSpace;

pub(crate) use net::build_net;

/// Slack allowed in the triangle inequality of an input matrix.
pub const TRIANGLE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricError {
    #[error("metric space needs at least one point")]
    Empty,
    #[error("{labels} labels for a {rows}-row distance matrix")]
    LabelCount { labels: usize, rows: usize },
    #[error("distance matrix row {row} has {len} entries, expected {expected}")]
    Ragged { row: usize, len: usize, expected: usize },
    #[error("dist[{i}][{j}] = {value} is not a finite nonnegative number")]
    BadEntry { i: usize, j: usize, value: f64 },
    #[error("dist[{i}][{i}] must be zero")]
    NonzeroDiagonal { i: usize },
    #[error("dist[{i}][{j}] differs from dist[{j}][{i}]")]
    Asymmetric { i: usize, j: usize },
    #[error("triangle inequality fails on ({i}, {j}, {k}) by {excess:e}")]
    Triangle {
        i: usize,
        j: usize,
        k: usize,
        excess: f64,
    },
    #[error("exact Gromov-Hausdorff distance supports at most {max} points, {which} has {size}")]
    TooLarge {
        which: &'static str,
        size: usize,
        max: usize,
    },
    #[error("net scale must be positive and finite, got {0}")]
    InvalidScale(f64),
    #[error("candidate grid of {size} points exceeds the limit of {max}; use a coarser scale")]
    PoolTooLarge { size: u64, max: usize },
    #[error("net needs room for at least one point")]
    NoPointBudget,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("malformed metric space JSON: {0}")]
    Json(String),
}
