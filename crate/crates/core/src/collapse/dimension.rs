use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{CollapseError, SequenceSpec};
use crate::gh::build_net;
use crate::numeric::{fit_line, mix_seed};

/// Box-counting estimate from ε-nets of one member.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DimensionEstimate {
    pub index: u64,
    /// Slope of `ln N(ε)` against `ln(1/ε)`.
    pub dimension: f64,
    /// `(ε, net size, certified covering radius)` per scale.
    pub nets: Vec<(f64, usize, f64)>,
    pub fit_rms: f64,
}

/// Estimates the dimension of the space the sequence approaches from ε-nets
/// of its last member.
pub fn estimate_limit_dimension(
    spec: &SequenceSpec,
    eps_grid: &[f64],
    seed: u64,
) -> Result<DimensionEstimate, CollapseError> {
    spec.validate()?;
    let decreasing = eps_grid.windows(2).all(|w| w[1] < w[0]);
    let positive = eps_grid.iter().all(|e| e.is_finite() && *e > 0.0);
    if eps_grid.len() < 3 || !decreasing || !positive {
        return Err(CollapseError::BadScaleGrid);
    }
    let index = spec.end;
    let member = spec.member(index)?;
    let nets = eps_grid
        .par_iter()
        .enumerate()
        .map(|(k, &eps)| {
            let net = build_net(&member, eps, mix_seed(seed, k as u64), usize::MAX)
                .map_err(|source| CollapseError::Net { index, source })?;
            if net.exhausted {
                return Err(CollapseError::NetExhausted { index, eps });
            }
            Ok((eps, net.points.len(), net.covering_radius))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let pts: Vec<_> = nets
        .iter()
        .map(|&(eps, n, _)| ((1.0 / eps).ln(), (n as f64).ln()))
        .collect();
    let fit = fit_line(&pts).ok_or(CollapseError::BadScaleGrid)?;
    Ok(DimensionEstimate {
        index,
        dimension: fit.slope,
        nets,
        fit_rms: fit.rms,
    })
}
