//! Closed-form constants bounding the fiber injectivity radius of a bounded
//! Riemannian submersion.
//!
//! Inputs are the A- and T-tensor bounds `C_A`, `C_T`, the fiber dimension
//! `k`, the curvature bound `|sec| ≤ K` of the total space and the length `ℓ`
//! of a short geodesic loop. The base then has curvature in
//! `[−K, K + 3 C_A²]`, which fixes the comparison scales `λ = √K` and
//! `Λ = sqrt(K + 3 C_A²)` used throughout.

mod breakdown;
mod comparison;
mod fiber;

use thiserror::Error;

pub use breakdown::{
    compute_breakdown, fiber_inj_bound, ode_rho_closed_form, tau_profile, BoundBreakdown,
    SubmersionBoundInput, TauRow, MAX_FIBER_DIM,
};
pub use comparison::{exp_differential_bounds, gray_oneill_interval, nullhomotopy_bounds, Regime};
pub use fiber::{c3_default, heintze_karcher_fiber_volume};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundsError {
    #[error("{name} must be finite, got {value}")]
    NonFinite { name: &'static str, value: f64 },
    #[error("{name} must be nonnegative, got {value}")]
    Negative { name: &'static str, value: f64 },
    #[error("{name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("fiber dimension k must lie in 1..={max}, got {k}")]
    FiberDimension { k: u32, max: u32 },
    #[error("domain violated: ell < 2π/sqrt(K + 3·C_A²) fails with ell = {ell}, 2π/sqrt(K + 3·C_A²) = {limit}")]
    LoopTooLong { ell: f64, limit: f64 },
    #[error("domain violated: v < π/Λ fails with v = {v}, π/Λ = {limit}")]
    ConjugateRadius { v: f64, limit: f64 },
    #[error("domain violated: ell < 2π/Λ fails with ell = {ell}, 2π/Λ = {limit}")]
    NullhomotopyDomain { ell: f64, limit: f64 },
    #[error("domain violated: λ ≥ Λ ≥ 0 fails with λ = {lambda}, Λ = {cap_lambda}")]
    NegativeRegime { lambda: f64, cap_lambda: f64 },
    #[error("bound overflows double precision: {0}")]
    Overflow(&'static str),
}

pub(crate) fn finite(name: &'static str, value: f64) -> Result<f64, BoundsError> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(BoundsError::NonFinite { name, value })
    }
}

pub(crate) fn nonnegative(name: &'static str, value: f64) -> Result<f64, BoundsError> {
    if finite(name, value)? < 0.0 {
        Err(BoundsError::Negative { name, value })
    } else {
        Ok(value)
    }
}

pub(crate) fn positive(name: &'static str, value: f64) -> Result<f64, BoundsError> {
    if finite(name, value)? <= 0.0 {
        Err(BoundsError::NonPositive { name, value })
    } else {
        Ok(value)
    }
}
