use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use super::{FiniteMetricSpace, MetricError};

/// Size limit for [`gh_distance_exact`].
pub const EXACT_MAX_POINTS: usize = 6;

/// Exact Gromov–Hausdorff distance: half the least distortion over all
/// correspondences.
///
/// Every correspondence contains one of the form `graph(f) ∪ graph(g)ᵀ` with
/// `f: X → Y` and `g` defined only on the points of `Y` missed by `f`, with no
/// larger distortion. The search enumerates those, pruning a partial relation
/// as soon as its distortion reaches the best complete one found so far. The
/// first choice `f(x₀)` is split across threads, sharing the incumbent.
pub fn gh_distance_exact(x: &FiniteMetricSpace, y: &FiniteMetricSpace) -> Result<f64, MetricError> {
    for (which, s) in [("X", x), ("Y", y)] {
        if s.len() > EXACT_MAX_POINTS {
            return Err(MetricError::TooLarge {
                which,
                size: s.len(),
                max: EXACT_MAX_POINTS,
            });
        }
    }
    // the full relation X × Y is a correspondence
    let mut full = 0.0f64;
    for a in 0..x.len() {
        for b in 0..x.len() {
            for c in 0..y.len() {
                for d in 0..y.len() {
                    full = full.max((x.dist(a, b) - y.dist(c, d)).abs());
                }
            }
        }
    }
    let incumbent = AtomicU64::new(full.to_bits());
    (0..y.len()).into_par_iter().for_each(|first| {
        let mut search = Search {
            x,
            y,
            pairs: Vec::with_capacity(x.len() + y.len()),
            covered: vec![0; y.len()],
            incumbent: &incumbent,
        };
        search.push(0, first, 0.0);
    });
    Ok(0.5 * f64::from_bits(incumbent.load(Ordering::Relaxed)))
}

struct Search<'a> {
    x: &'a FiniteMetricSpace,
    y: &'a FiniteMetricSpace,
    pairs: Vec<(usize, usize)>,
    covered: Vec<u32>,
    incumbent: &'a AtomicU64,
}

impl Search<'_> {
    fn best(&self) -> f64 {
        f64::from_bits(self.incumbent.load(Ordering::Relaxed))
    }

    /// Adds `(a, b)` on top of a relation of distortion `dis`, then continues.
    fn push(&mut self, a: usize, b: usize, dis: f64) {
        let mut dis = dis;
        for &(p, q) in &self.pairs {
            dis = dis.max((self.x.dist(a, p) - self.y.dist(b, q)).abs());
        }
        if dis >= self.best() {
            return;
        }
        self.pairs.push((a, b));
        self.covered[b] += 1;
        self.extend(dis);
        self.covered[b] -= 1;
        self.pairs.pop();
    }

    fn extend(&mut self, dis: f64) {
        let assigned_x = self.pairs.len().min(self.x.len());
        if assigned_x < self.x.len() {
            for b in 0..self.y.len() {
                self.push(assigned_x, b, dis);
            }
            return;
        }
        match (0..self.y.len()).find(|&b| self.covered[b] == 0) {
            Some(b) => {
                for a in 0..self.x.len() {
                    self.push(a, b, dis);
                }
            }
            None => {
                // positive floats order like their bit patterns
                self.incumbent.fetch_min(dis.to_bits(), Ordering::Relaxed);
            }
        }
    }
}

/// Lower bound on the Gromov–Hausdorff distance, valid for any sizes.
///
/// A correspondence of distortion `δ` matches every distance value of one
/// space with one of the other within `δ`, and likewise for eccentricities, so
/// half the Hausdorff distance between those value sets is a lower bound, as is
/// half the diameter gap.
pub fn gh_lower_bound(x: &FiniteMetricSpace, y: &FiniteMetricSpace) -> f64 {
    let values = |s: &FiniteMetricSpace| -> Vec<f64> {
        let mut v: Vec<f64> = s.matrix().iter().flatten().copied().collect();
        v.sort_by(f64::total_cmp);
        v.dedup();
        v
    };
    let sorted = |mut v: Vec<f64>| {
        v.sort_by(f64::total_cmp);
        v
    };
    let diam_gap = (x.diameter() - y.diameter()).abs();
    let values_gap = hausdorff_1d(&values(x), &values(y));
    let ecc_gap = hausdorff_1d(&sorted(x.eccentricities()), &sorted(y.eccentricities()));
    0.5 * diam_gap.max(values_gap).max(ecc_gap)
}

/// Hausdorff distance between two nonempty sorted sets of reals.
fn hausdorff_1d(a: &[f64], b: &[f64]) -> f64 {
    let one_sided = |a: &[f64], b: &[f64]| {
        a.iter()
            .map(|&v| {
                let k = b.partition_point(|&w| w < v);
                let right = b.get(k).map_or(f64::INFINITY, |w| w - v);
                let left = k.checked_sub(1).map_or(f64::INFINITY, |k| v - b[k]);
                right.min(left)
            })
            .fold(0.0, f64::max)
    };
    one_sided(a, b).max(one_sided(b, a))
}
