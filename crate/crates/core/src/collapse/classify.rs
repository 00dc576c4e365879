use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{CollapseError, CollapseProfile};
use crate::numeric::{fit_line, fmt_sig17};

pub const DEFAULT_THRESHOLD: f64 = 0.1;
/// RMS of the log-log residuals.
pub const DEFAULT_FIT_TOLERANCE: f64 = 0.2;
pub const MIN_ROWS: usize = 5;
/// Decay exponents at or above this count as polynomial decay.
pub const MIN_DECAY: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum VerdictKind {
    NonCollapsing,
    CodimAtMostOne,
    CodimAtLeastTwo,
    Inconclusive,
}

impl VerdictKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            VerdictKind::NonCollapsing => "NON_COLLAPSING",
            VerdictKind::CodimAtMostOne => "CODIM_AT_MOST_ONE",
            VerdictKind::CodimAtLeastTwo => "CODIM_AT_LEAST_TWO",
            VerdictKind::Inconclusive => "INCONCLUSIVE",
        }
    }
}

/// Classification of a profile, with the evidence behind it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CollapseVerdict {
    pub kind: VerdictKind,
    /// Smallest ratio over the profile.
    pub inf_ratio: f64,
    /// `−slope` of `ln(ratio)` against `ln(index)`; `None` when some ratio is
    /// zero.
    pub decay_exponent: Option<f64>,
    pub fit_rms: Option<f64>,
    pub min_inj: f64,
    pub threshold: f64,
    pub fit_tolerance: f64,
}

impl CollapseVerdict {
    pub const CSV_HEADER: &'static str =
        "kind,inf_ratio,decay_exponent,fit_rms,min_inj,threshold,fit_tolerance";

    pub fn to_csv(&self) -> String {
        let opt = |v: Option<f64>| v.map(fmt_sig17).unwrap_or_default();
        format!(
            "{}\n{},{},{},{},{},{},{}\n",
            Self::CSV_HEADER,
            self.kind.as_str(),
            fmt_sig17(self.inf_ratio),
            opt(self.decay_exponent),
            opt(self.fit_rms),
            fmt_sig17(self.min_inj),
            fmt_sig17(self.threshold),
            fmt_sig17(self.fit_tolerance)
        )
    }
}

/// Sorts a profile into the collapse trichotomy.
///
/// In order:
///
/// 1. `NON_COLLAPSING` when every injectivity radius is at least
///    `threshold · π`;
/// 2. `CODIM_AT_LEAST_TWO` when the ratio decays like `index^{−a}` with
///    `a ≥ 0.5` and log-log residual RMS at most `fit_tolerance`;
/// 3. `CODIM_AT_MOST_ONE` when the smallest ratio is at least `threshold`;
/// 4. `INCONCLUSIVE` otherwise.
///
/// The decay test runs before the floor test because a finite window of a
/// decaying sequence can still sit above any fixed floor.
pub fn classify(
    profile: &CollapseProfile,
    threshold: f64,
    fit_tolerance: f64,
) -> Result<CollapseVerdict, CollapseError> {
    let rows = &profile.rows;
    if rows.len() < MIN_ROWS {
        return Err(CollapseError::TooFewRows {
            rows: rows.len(),
            min: MIN_ROWS,
        });
    }
    let inf_ratio = rows.iter().map(|r| r.ratio).fold(f64::INFINITY, f64::min);
    let min_inj = rows.iter().map(|r| r.inj).fold(f64::INFINITY, f64::min);
    let fit = if inf_ratio > 0.0 {
        let pts: Vec<_> = rows
            .iter()
            .map(|r| ((r.index as f64).ln(), r.ratio.ln()))
            .collect();
        fit_line(&pts)
    } else {
        None
    };
    let decay_exponent = fit.map(|f| -f.slope);
    let fit_rms = fit.map(|f| f.rms);
    let decays = matches!((decay_exponent, fit_rms), (Some(a), Some(e)) if a >= MIN_DECAY && e <= fit_tolerance);
    let kind = if min_inj >= threshold * PI {
        VerdictKind::NonCollapsing
    } else if decays {
        VerdictKind::CodimAtLeastTwo
    } else if inf_ratio >= threshold {
        VerdictKind::CodimAtMostOne
    } else {
        VerdictKind::Inconclusive
    };
    Ok(CollapseVerdict {
        kind,
        inf_ratio,
        decay_exponent,
        fit_rms,
        min_inj,
        threshold,
        fit_tolerance,
    })
}
