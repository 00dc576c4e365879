//! Numerical diagnostics for collapsing sequences of Riemannian manifolds.
//!
//! The crate evaluates the ratio `vol(B_r(x)) / inj(x)` along collapsing
//! sequences of model manifolds (flat tori and Berger spheres), classifies the
//! codimension of the collapse, and provides the closed-form constants that
//! bound fiber injectivity radii of bounded Riemannian submersions.
//!
//! Module map:
//!
//! - [`geometry`]: flat tori and Berger spheres. Distances, injectivity radii,
//!   exact and Monte-Carlo ball volumes, the criterion ratio.
//! - [`gh`]: finite metric spaces, ε-nets and Gromov–Hausdorff distances.
//! - [`submersion`]: comparison-geometry bounds, the holonomy/nullhomotopy ODE
//!   and the resulting fiber injectivity bound.
//! - [`collapse`]: sequence profiling, trichotomy classification, limit
//!   dimension estimates and the worked-example reproduction table.
//! - [`cli`]: the `collapse-lab` command-line driver.

pub mod cli;
pub mod collapse;
pub mod geometry;
pub mod gh;
pub mod numeric;
pub mod submersion;

pub use collapse::{
    classify, estimate_limit_dimension, profile, CollapseProfile, CollapseVerdict, SequenceSpec,
    VerdictKind,
};
pub use geometry::{BergerSphere, FlatTorus, Member, MonteCarlo, Point, VolumeMode};
pub use gh::{epsilon_net, gh_distance_exact, gh_lower_bound, FiniteMetricSpace};
pub use submersion::{compute_breakdown, BoundBreakdown, SubmersionBoundInput};
