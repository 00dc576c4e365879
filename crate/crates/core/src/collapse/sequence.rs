use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{CollapseError, IndexRule};
use crate::geometry::{BergerSphere, FlatTorus, Member, MonteCarlo, VolumeMode, DEFAULT_SAMPLES};
use crate::numeric::{fmt_sig17, mix_seed};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// The rule lists the circle radii.
    Torus,
    /// The rule gives the fiber scale `ε`.
    Berger,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeKind {
    Exact,
    MonteCarlo,
}

/// A parametrized sequence of model manifolds and the ball radius at which to
/// evaluate the criterion.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SequenceSpec {
    pub family: Family,
    pub rule: IndexRule,
    /// First and last index, inclusive.
    pub start: u64,
    pub end: u64,
    pub r: f64,
    pub mode: ModeKind,
    pub samples: u64,
    pub seed: u64,
}

impl SequenceSpec {
    /// Exact-mode spec; see [`SequenceSpec::monte_carlo`] to switch backends.
    pub fn new(family: Family, rule: &str, start: u64, end: u64, r: f64) -> Result<Self, CollapseError> {
        let spec = Self {
            family,
            rule: IndexRule::parse(rule)?,
            start,
            end,
            r,
            mode: ModeKind::Exact,
            samples: DEFAULT_SAMPLES,
            seed: 0,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn monte_carlo(mut self, samples: u64, seed: u64) -> Self {
        self.mode = ModeKind::MonteCarlo;
        self.samples = samples;
        self.seed = seed;
        self
    }

    pub fn with_mode(mut self, mode: ModeKind) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_range(mut self, start: u64, end: u64) -> Self {
        self.start = start;
        self.end = end;
        self
    }

    pub fn with_r(mut self, r: f64) -> Self {
        self.r = r;
        self
    }

    pub fn validate(&self) -> Result<(), CollapseError> {
        if self.start > self.end {
            return Err(CollapseError::EmptyRange {
                start: self.start,
                end: self.end,
            });
        }
        if self.start == 0 {
            return Err(CollapseError::ZeroIndex { start: self.start });
        }
        if !(self.r.is_finite() && self.r > 0.0) {
            return Err(CollapseError::InvalidRadius(self.r));
        }
        match self.family {
            Family::Berger => self.rule.expect_arity(1)?,
            Family::Torus => {}
        }
        Ok(())
    }

    pub fn indices(&self) -> std::ops::RangeInclusive<u64> {
        self.start..=self.end
    }

    pub fn member(&self, index: u64) -> Result<Member, CollapseError> {
        let params = self.rule.eval(index);
        let member = match self.family {
            Family::Torus => FlatTorus::new(params).map(Member::Torus),
            Family::Berger => BergerSphere::new(params[0]).map(Member::Berger),
        };
        member.map_err(|source| CollapseError::Member { index, source })
    }

    /// Volume backend for one index. Monte-Carlo seeds are derived from
    /// `(seed, index)` so rows do not share samples.
    pub fn volume_mode(&self, index: u64) -> VolumeMode {
        match self.mode {
            ModeKind::Exact => VolumeMode::Exact,
            ModeKind::MonteCarlo => {
                VolumeMode::MonteCarlo(MonteCarlo::new(self.samples, mix_seed(self.seed, index)))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileRow {
    pub index: u64,
    pub inj: f64,
    pub vol_ball: f64,
    pub ratio: f64,
    pub diam: f64,
}

/// Criterion statistics, one row per index in increasing order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CollapseProfile {
    pub rows: Vec<ProfileRow>,
}

impl CollapseProfile {
    pub fn ratios(&self) -> impl Iterator<Item = f64> + '_ {
        self.rows.iter().map(|r| r.ratio)
    }

    pub const CSV_HEADER: &'static str = "index,inj,vol_ball,ratio,diam";

    pub fn to_csv(&self) -> String {
        let mut out = String::from(Self::CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                r.index,
                fmt_sig17(r.inj),
                fmt_sig17(r.vol_ball),
                fmt_sig17(r.ratio),
                fmt_sig17(r.diam)
            ));
        }
        out
    }
}

/// Evaluates injectivity radius, ball volume, ratio and diameter at every
/// index. Indices are processed in parallel; errors name the failing index.
pub fn profile(spec: &SequenceSpec) -> Result<CollapseProfile, CollapseError> {
    spec.validate()?;
    let rows = spec
        .indices()
        .into_par_iter()
        .map(|index| {
            let member = spec.member(index)?;
            let vol = member
                .ball_volume(spec.r, &spec.volume_mode(index))
                .map_err(|source| CollapseError::Member { index, source })?;
            let inj = member.injectivity_radius();
            Ok(ProfileRow {
                index,
                inj,
                vol_ball: vol.value,
                ratio: vol.value / inj,
                diam: member.diameter(),
            })
        })
        .collect::<Result<Vec<_>, CollapseError>>()?;
    Ok(CollapseProfile { rows })
}
