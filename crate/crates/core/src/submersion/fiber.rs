use std::f64::consts::PI;

use super::{nonnegative, positive, BoundsError};
use crate::numeric::sinhc;

/// Default constant for [`heintze_karcher_fiber_volume`]: 2 for circles,
/// otherwise twice the volume of the unit `(k−1)`-sphere.
///
/// Only the circle value is known to be sharp; the higher values are a
/// placeholder for the comparison constant.
pub fn c3_default(k: u32) -> f64 {
    match k {
        0 | 1 => 2.0,
        _ => 2.0 * unit_sphere_volume(k - 1),
    }
}

/// Volume of the unit `m`-sphere in `R^{m+1}`.
fn unit_sphere_volume(m: u32) -> f64 {
    match m {
        0 => 2.0,
        1 => 2.0 * PI,
        _ => 2.0 * PI / f64::from(m - 1) * unit_sphere_volume(m - 2),
    }
}

/// Fiber volume bound `c3 · inj · (sinh(diam √K)/√K)^{k−1}` for a
/// `k`-dimensional fiber with sectional curvature at least `−K`.
///
/// At `K = 0` the ratio is replaced by its limit `diam`.
pub fn heintze_karcher_fiber_volume(
    k: u32,
    cap_k_fiber: f64,
    inj_f: f64,
    diam_f: f64,
    c3: f64,
) -> Result<f64, BoundsError> {
    if k == 0 {
        return Err(BoundsError::FiberDimension { k, max: super::MAX_FIBER_DIM });
    }
    nonnegative("cap_k_fiber", cap_k_fiber)?;
    positive("inj_f", inj_f)?;
    positive("diam_f", diam_f)?;
    positive("c3", c3)?;
    let spread = diam_f * sinhc(diam_f * cap_k_fiber.sqrt());
    Ok(c3 * inj_f * spread.powi(k as i32 - 1))
}
