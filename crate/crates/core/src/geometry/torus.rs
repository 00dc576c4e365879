use std::f64::consts::{PI, TAU};

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{check_ball_radius, Estimate, GeometryError, MonteCarlo, Point};

/// Flat torus `S¹(r_1) × … × S¹(r_n)` with the product metric.
///
/// Factor `j` has circumference `2π r_j`; points carry one arc-length
/// coordinate per factor and any real coordinate is read modulo the period.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawTorus", into = "RawTorus")]
pub struct FlatTorus {
    radii: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct RawTorus {
    radii: Vec<f64>,
}

impl TryFrom<RawTorus> for FlatTorus {
    type Error = GeometryError;

    fn try_from(raw: RawTorus) -> Result<Self, Self::Error> {
        FlatTorus::new(raw.radii)
    }
}

impl From<FlatTorus> for RawTorus {
    fn from(t: FlatTorus) -> Self {
        RawTorus { radii: t.radii }
    }
}

impl FlatTorus {
    pub fn new(radii: Vec<f64>) -> Result<Self, GeometryError> {
        if radii.is_empty() {
            return Err(GeometryError::EmptyTorus);
        }
        if let Some((index, &value)) = radii
            .iter()
            .enumerate()
            .find(|(_, r)| !(r.is_finite() && **r > 0.0))
        {
            return Err(GeometryError::InvalidCircleRadius { index, value });
        }
        Ok(Self { radii })
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn dim(&self) -> usize {
        self.radii.len()
    }

    /// Circumferences `2π r_j`.
    pub fn periods(&self) -> impl Iterator<Item = f64> + '_ {
        self.radii.iter().map(|r| TAU * r)
    }

    /// The torus with every radius multiplied by `s`.
    pub fn scaled(&self, s: f64) -> Result<Self, GeometryError> {
        if !(s.is_finite() && s > 0.0) {
            return Err(GeometryError::InvalidScale(s));
        }
        Self::new(self.radii.iter().map(|r| r * s).collect())
    }

    /// Half the length of the shortest closed geodesic: `π · min r_j`.
    pub fn injectivity_radius(&self) -> f64 {
        PI * self.radii.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn volume(&self) -> f64 {
        self.periods().product()
    }

    /// Distance from a point to the farthest point: half the diagonal of the
    /// fundamental box.
    pub fn diameter(&self) -> f64 {
        PI * self.radii.iter().map(|r| r * r).sum::<f64>().sqrt()
    }

    pub fn point(&self, coords: Vec<f64>) -> Result<Point, GeometryError> {
        self.check_coords(&coords)?;
        Ok(Point::new(coords))
    }

    fn check_coords(&self, coords: &[f64]) -> Result<(), GeometryError> {
        if coords.len() != self.dim() {
            return Err(GeometryError::DimensionMismatch {
                expected: self.dim(),
                found: coords.len(),
            });
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(GeometryError::NonFiniteCoordinate);
        }
        Ok(())
    }

    /// Geodesic distance. Each factor contributes its wrap-around distance
    /// `min(|Δ|, 2πr − |Δ|)` after reducing `Δ` modulo the period.
    pub fn distance(&self, x: &Point, y: &Point) -> Result<f64, GeometryError> {
        self.check_coords(x.coords())?;
        self.check_coords(y.coords())?;
        Ok(self.distance_unchecked(x.coords(), y.coords()))
    }

    pub(crate) fn distance_unchecked(&self, x: &[f64], y: &[f64]) -> f64 {
        x.iter()
            .zip(y)
            .zip(self.periods())
            .map(|((a, b), p)| {
                let w = wrap_gap(a - b, p);
                w * w
            })
            .sum::<f64>()
            .sqrt()
    }

    /// Exact volume of the open geodesic ball of radius `r`, for `n ≤ 2`.
    ///
    /// The fundamental box centered at the ball's center is the Voronoi cell of
    /// the covering lattice, so the ball is the Euclidean disk of radius `r`
    /// clipped to that box, whose area has a closed form.
    pub fn ball_volume_exact(&self, r: f64) -> Result<f64, GeometryError> {
        check_ball_radius(r)?;
        if self.dim() > 2 {
            return Err(GeometryError::UnsupportedDimension { dim: self.dim() });
        }
        if r == 0.0 {
            return Ok(0.0);
        }
        if r >= self.diameter() {
            return Ok(self.volume());
        }
        let half: Vec<f64> = self.radii.iter().map(|rj| PI * rj).collect();
        Ok(match half.as_slice() {
            [a] => 2.0 * r.min(*a),
            [a, b] => 4.0 * quarter_disk_in_box(*a, *b, r),
            _ => unreachable!("dimension checked above"),
        })
    }

    /// Monte-Carlo ball volume with the ball centered at the origin.
    pub fn ball_volume_mc(&self, r: f64, mc: &MonteCarlo) -> Result<Estimate, GeometryError> {
        let origin = Point::new(vec![0.0; self.dim()]);
        self.ball_volume_mc_at(&origin, r, mc)
    }

    /// Monte-Carlo ball volume around an arbitrary center: uniform samples in
    /// the fundamental domain, counted when they fall within distance `r`.
    pub fn ball_volume_mc_at(
        &self,
        center: &Point,
        r: f64,
        mc: &MonteCarlo,
    ) -> Result<Estimate, GeometryError> {
        check_ball_radius(r)?;
        self.check_coords(center.coords())?;
        mc.validate()?;
        if r == 0.0 {
            return Ok(Estimate::exact(0.0));
        }
        let periods: Vec<f64> = self.periods().collect();
        let c = center.coords();
        let r2 = r * r;
        let hits = mc.count_hits(|rng| {
            let mut acc = 0.0;
            for (p, cj) in periods.iter().zip(c) {
                let x: f64 = rng.random::<f64>() * p;
                let w = wrap_gap(x - cj, *p);
                acc += w * w;
            }
            acc < r2
        });
        Ok(mc.estimate(hits, self.volume()))
    }
}

/// Distance to the nearest lattice translate on a circle of circumference `p`.
fn wrap_gap(delta: f64, p: f64) -> f64 {
    // reducing |Δ| keeps the result exactly symmetric in the two points
    let d = delta.abs() % p;
    d.min(p - d)
}

/// Area of `{(x, y) ∈ [0, a] × [0, b] : x² + y² < r²}`.
fn quarter_disk_in_box(a: f64, b: f64, r: f64) -> f64 {
    // antiderivative of sqrt(r² − x²)
    let f = |x: f64| 0.5 * (x * (r * r - x * x).max(0.0).sqrt() + r * r * (x / r).min(1.0).asin());
    let x_end = a.min(r);
    let x_flat = (r * r - b * b).max(0.0).sqrt().min(x_end);
    b * x_flat + f(x_end) - f(x_flat)
}
