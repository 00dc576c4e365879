//! Profiles of the criterion ratio `vol(B_r(x)) / inj(x)` along collapsing
//! sequences, their classification, and limit-dimension estimates.
//!
//! The ratio stays bounded below along a sequence exactly when the collapse
//! has codimension at most one; it decays to zero when the limit loses two or
//! more dimensions.

mod classify;
mod dimension;
mod reproduce;
pub mod rule;
mod sequence;

use thiserror::Error;

use crate::geometry::GeometryError;
use crate::gh::MetricError;

pub use classify::{classify, CollapseVerdict, VerdictKind, DEFAULT_FIT_TOLERANCE, DEFAULT_THRESHOLD, MIN_ROWS};
pub use dimension::{estimate_limit_dimension, DimensionEstimate};
pub use reproduce::{reproduce, ReproRow, ReproTable};
pub use rule::{IndexRule, RuleError};
pub use sequence::{profile, CollapseProfile, Family, ModeKind, ProfileRow, SequenceSpec};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CollapseError {
    #[error("index range {start}:{end} is empty")]
    EmptyRange { start: u64, end: u64 },
    #[error("index range must start at 1 or later, got {start}")]
    ZeroIndex { start: u64 },
    #[error("ball radius r must be positive and finite, got {0}")]
    InvalidRadius(f64),
    #[error("parameter rule: {0}")]
    Rule(#[from] RuleError),
    #[error("index {index}: {source}")]
    Member {
        index: u64,
        #[source]
        source: GeometryError,
    },
    #[error("index {index}: {source}")]
    Net {
        index: u64,
        #[source]
        source: MetricError,
    },
    #[error("index {index}: net budget ran out at scale {eps} before reaching coverage")]
    NetExhausted { index: u64, eps: f64 },
    #[error("classification needs at least {min} profile rows, got {rows}")]
    TooFewRows { rows: usize, min: usize },
    #[error("scale grid needs at least 3 strictly decreasing positive values")]
    BadScaleGrid,
}
