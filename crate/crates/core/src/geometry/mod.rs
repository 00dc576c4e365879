//! Exact and Monte-Carlo geometry of the model manifold families.
//!
//! Two homogeneous families are supported:
//!
//! - [`FlatTorus`]: products of circles `S¹(r_1) × … × S¹(r_n)`.
//! - [`BergerSphere`]: `S³` with the Hopf fibers rescaled by `ε ∈ (0, 1]`.
//!
//! Both are homogeneous, so injectivity radius, ball volume and the criterion
//! ratio `vol(B_r(x)) / inj(x)` do not depend on the base point.

mod berger;
pub(crate) mod hopf;
mod member;
mod montecarlo;
mod torus;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use berger::{BergerGeometry, BergerSphere};
pub use member::Member;
pub use montecarlo::{Estimate, MonteCarlo, DEFAULT_SAMPLES, DEFAULT_SHARDS, MIN_SAMPLES};
pub use torus::FlatTorus;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("torus needs at least one circle factor")]
    EmptyTorus,
    #[error("circle radius #{index} must be positive and finite, got {value}")]
    InvalidCircleRadius { index: usize, value: f64 },
    #[error("point has {found} coordinates, manifold expects {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("point coordinates must be finite")]
    NonFiniteCoordinate,
    #[error("Berger sphere point must be a unit quaternion, norm is {norm}")]
    NotUnitQuaternion { norm: f64 },
    #[error("Berger fiber scale must lie in (0, 1], got {0}")]
    EpsilonOutOfRange(f64),
    #[error("ball radius must be finite and nonnegative, got {0}")]
    InvalidBallRadius(f64),
    #[error("scale factor must be positive and finite, got {0}")]
    InvalidScale(f64),
    #[error("exact ball volume supports dimension <= 2, torus has dimension {dim}; use Monte Carlo")]
    UnsupportedDimension { dim: usize },
    #[error("Monte Carlo needs at least {min} samples, got {samples}")]
    TooFewSamples { samples: u64, min: u64 },
    #[error("Monte Carlo needs at least one shard")]
    NoShards,
}

/// A point of a model manifold in its chart convention.
///
/// Flat tori use one arc-length coordinate per circle factor. Berger spheres
/// use a unit quaternion `(a, b, c, d)`; the Hopf fiber through `q` is
/// `q · e^{iφ}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Point {
    coords: Vec<f64>,
}

impl Point {
    pub fn new(coords: Vec<f64>) -> Self {
        Self { coords }
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }
}

impl From<Vec<f64>> for Point {
    fn from(coords: Vec<f64>) -> Self {
        Self::new(coords)
    }
}

/// Backend used to evaluate ball volumes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VolumeMode {
    /// Closed forms where they exist, deterministic quadrature otherwise.
    Exact,
    MonteCarlo(MonteCarlo),
}

pub(crate) fn check_ball_radius(r: f64) -> Result<(), GeometryError> {
    if r.is_finite() && r >= 0.0 {
        Ok(())
    } else {
        Err(GeometryError::InvalidBallRadius(r))
    }
}
