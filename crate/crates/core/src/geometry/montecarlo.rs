use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::GeometryError;

pub const DEFAULT_SAMPLES: u64 = 1_000_000;
pub const MIN_SAMPLES: u64 = 1_000;
/// Fixed shard count, so results do not depend on the worker count.
pub const DEFAULT_SHARDS: u32 = 16;

/// Sampling budget for Monte-Carlo volume estimates.
///
/// Each shard draws from its own ChaCha8 stream keyed by `(seed, shard)`, so a
/// fixed `(seed, samples, shards)` triple yields bit-identical estimates
/// regardless of how the shards are scheduled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonteCarlo {
    pub samples: u64,
    pub seed: u64,
    pub shards: u32,
}

impl MonteCarlo {
    pub fn new(samples: u64, seed: u64) -> Self {
        Self {
            samples,
            seed,
            shards: DEFAULT_SHARDS,
        }
    }

    pub fn with_shards(mut self, shards: u32) -> Self {
        self.shards = shards;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub(crate) fn validate(&self) -> Result<(), GeometryError> {
        if self.samples < MIN_SAMPLES {
            return Err(GeometryError::TooFewSamples {
                samples: self.samples,
                min: MIN_SAMPLES,
            });
        }
        if self.shards == 0 {
            return Err(GeometryError::NoShards);
        }
        Ok(())
    }

    /// Counts the samples for which `hit` returns true.
    pub(crate) fn count_hits<F>(&self, hit: F) -> u64
    where
        F: Fn(&mut ChaCha8Rng) -> bool + Sync,
    {
        let shards = u64::from(self.shards);
        let base = self.samples / shards;
        let extra = self.samples % shards;
        (0..shards)
            .into_par_iter()
            .map(|k| {
                let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
                rng.set_stream(k);
                let n = base + u64::from(k < extra);
                let mut hits = 0u64;
                for _ in 0..n {
                    hits += u64::from(hit(&mut rng));
                }
                hits
            })
            .sum()
    }

    /// Turns a hit count into a volume estimate over a domain of `total` volume.
    pub(crate) fn estimate(&self, hits: u64, total: f64) -> Estimate {
        let n = self.samples as f64;
        let p = hits as f64 / n;
        Estimate {
            value: total * p,
            std_error: total * (p * (1.0 - p) / n).sqrt(),
        }
    }
}

impl Default for MonteCarlo {
    fn default() -> Self {
        Self::new(DEFAULT_SAMPLES, 0)
    }
}

/// A Monte-Carlo estimate with its binomial standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    pub std_error: f64,
}

impl Estimate {
    pub fn exact(value: f64) -> Self {
        Self {
            value,
            std_error: 0.0,
        }
    }

    /// True when `other` lies within `k` standard errors of this estimate.
    pub fn agrees_with(&self, other: f64, k: f64) -> bool {
        (self.value - other).abs() <= k * self.std_error
    }
}
