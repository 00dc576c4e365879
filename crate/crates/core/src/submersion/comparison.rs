use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{nonnegative, BoundsError};
use crate::numeric::{sinc, sinhc};

/// Curvature regime of the base for [`nullhomotopy_bounds`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `−λ² ≤ sec ≤ Λ²`.
    Mixed,
    /// `−λ² ≤ sec ≤ −Λ²`, with `λ ≥ Λ`.
    Negative,
}

/// Bounds on the stretch of `D_v exp` when `−λ² ≤ sec ≤ Λ²`:
/// `sin(Λ|v|)/(Λ|v|) · |w| ≤ |D_v exp(w)| ≤ sinh(λ|v|)/(λ|v|) · |w|`.
///
/// Returns `(lower, upper)`. The lower factor needs `|v| < π/Λ`.
pub fn exp_differential_bounds(
    lambda: f64,
    cap_lambda: f64,
    v_norm: f64,
) -> Result<(f64, f64), BoundsError> {
    nonnegative("lambda", lambda)?;
    nonnegative("cap_lambda", cap_lambda)?;
    nonnegative("v_norm", v_norm)?;
    if cap_lambda > 0.0 && v_norm >= PI / cap_lambda {
        return Err(BoundsError::ConjugateRadius {
            v: v_norm,
            limit: PI / cap_lambda,
        });
    }
    Ok((sinc(cap_lambda * v_norm), sinhc(lambda * v_norm)))
}

/// Bounds `(|∂H/∂t|, |∂H/∂s|)` for the geodesic nullhomotopy `H` of a loop of
/// length `ell` through the base point.
///
/// Mixed: `(Λ/λ) sinh(λℓ/2)/sin(Λℓ/2) · ℓ`. Negative: the same with
/// `sinh(Λℓ/2)` in the denominator. Both use `sinh(λℓ/2)/(λℓ/2) · ℓ/2` for the
/// second bound, and replace ratios at zero parameters by their limits.
pub fn nullhomotopy_bounds(
    lambda: f64,
    cap_lambda: f64,
    ell: f64,
    regime: Regime,
) -> Result<(f64, f64), BoundsError> {
    nonnegative("lambda", lambda)?;
    nonnegative("cap_lambda", cap_lambda)?;
    nonnegative("ell", ell)?;
    let half = 0.5 * ell;
    let stretch = sinhc(lambda * half);
    let dt = match regime {
        Regime::Mixed => {
            if cap_lambda > 0.0 && ell >= 2.0 * PI / cap_lambda {
                return Err(BoundsError::NullhomotopyDomain {
                    ell,
                    limit: 2.0 * PI / cap_lambda,
                });
            }
            stretch / sinc(cap_lambda * half) * ell
        }
        Regime::Negative => {
            if lambda < cap_lambda {
                return Err(BoundsError::NegativeRegime { lambda, cap_lambda });
            }
            stretch / sinhc(cap_lambda * half) * ell
        }
    };
    Ok((dt, stretch * half))
}

/// Sectional-curvature interval `(−K, K + 3 C_A²)` of the base.
pub fn gray_oneill_interval(cap_k: f64, c_a: f64) -> (f64, f64) {
    (-cap_k, cap_k + 3.0 * c_a * c_a)
}
