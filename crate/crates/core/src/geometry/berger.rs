use std::f64::consts::{FRAC_PI_2, PI, TAU};

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::hopf::{self, Quat};
use super::{check_ball_radius, Estimate, GeometryError, MonteCarlo, Point};
use crate::numeric::{gauss_legendre, integrate};

const UNIT_TOLERANCE: f64 = 1e-12;
const KINK_SCAN: usize = 64;
const PANELS: usize = 6;
const NODES: usize = 16;

/// Berger sphere: `S³` with the Hopf fibers scaled by `ε ∈ (0, 1]`.
///
/// `ε = 1` is the round unit sphere. As `ε → 0` the fibers shrink and the
/// spheres converge to the base `S²(1/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawBerger", into = "RawBerger")]
pub struct BergerSphere {
    epsilon: f64,
}

#[derive(Serialize, Deserialize)]
struct RawBerger {
    epsilon: f64,
}

impl TryFrom<RawBerger> for BergerSphere {
    type Error = GeometryError;

    fn try_from(raw: RawBerger) -> Result<Self, Self::Error> {
        BergerSphere::new(raw.epsilon)
    }
}

impl From<BergerSphere> for RawBerger {
    fn from(b: BergerSphere) -> Self {
        RawBerger { epsilon: b.epsilon }
    }
}

/// Closed-form invariants of a Berger sphere.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BergerGeometry {
    pub inj: f64,
    pub volume: f64,
    pub sec_lo: f64,
    pub sec_hi: f64,
    pub fiber_diameter: f64,
}

impl BergerSphere {
    pub fn new(epsilon: f64) -> Result<Self, GeometryError> {
        if epsilon.is_finite() && epsilon > 0.0 && epsilon <= 1.0 {
            Ok(Self { epsilon })
        } else {
            Err(GeometryError::EpsilonOutOfRange(epsilon))
        }
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// `π ε`, half the fiber length.
    ///
    /// This is the injectivity radius whenever the fibers are the shortest
    /// closed geodesics and no conjugate point comes earlier, which holds for
    /// `ε ≤ 1/√3` (where the curvature is at most `4 − 3ε² ≤ 1/ε²`) and for
    /// `ε = 1`.
    pub fn injectivity_radius(&self) -> f64 {
        PI * self.epsilon
    }

    pub fn volume(&self) -> f64 {
        2.0 * PI * PI * self.epsilon
    }

    pub fn fiber_diameter(&self) -> f64 {
        PI * self.epsilon
    }

    /// Range `[ε², 4 − 3ε²]` of sectional curvatures. The minimum is taken
    /// on planes containing the fiber, the maximum on horizontal planes.
    pub fn curvature_bounds(&self) -> (f64, f64) {
        let e2 = self.epsilon * self.epsilon;
        (e2, 4.0 - 3.0 * e2)
    }

    /// `π / (2 sqrt(1 − ε²))` for `ε² ≤ 1/2`, else `π ε`.
    pub fn diameter(&self) -> f64 {
        hopf::diameter(self.epsilon)
    }

    pub fn geometry(&self) -> BergerGeometry {
        let (sec_lo, sec_hi) = self.curvature_bounds();
        BergerGeometry {
            inj: self.injectivity_radius(),
            volume: self.volume(),
            sec_lo,
            sec_hi,
            fiber_diameter: self.fiber_diameter(),
        }
    }

    /// Wraps a unit quaternion `(a, b, c, d) = a + bi + cj + dk`.
    pub fn point(&self, coords: Vec<f64>) -> Result<Point, GeometryError> {
        check_quaternion(&coords)?;
        Ok(Point::new(coords))
    }

    pub fn distance(&self, x: &Point, y: &Point) -> Result<f64, GeometryError> {
        let p = check_quaternion(x.coords())?;
        let q = check_quaternion(y.coords())?;
        Ok(self.distance_quat(&p, &q))
    }

    pub(crate) fn distance_quat(&self, p: &Quat, q: &Quat) -> f64 {
        let (s, psi) = hopf::relative_invariants(p, q);
        hopf::invariant_distance(self.epsilon, s, psi)
    }

    /// Time-one endpoint of the geodesic from `x` with initial velocity
    /// `x · (v₀ i + v₁ j + v₂ k)`, whose length is `sqrt(ε² v₀² + v₁² + v₂²)`.
    pub fn exp(&self, x: &Point, v: [f64; 3]) -> Result<Point, GeometryError> {
        let p = check_quaternion(x.coords())?;
        if v.iter().any(|c| !c.is_finite()) {
            return Err(GeometryError::NonFiniteCoordinate);
        }
        let q = hopf::qmul(&p, &hopf::exp_at_identity(self.epsilon, v));
        let n = q.iter().map(|c| c * c).sum::<f64>().sqrt();
        Ok(Point::new(q.iter().map(|c| c / n).collect()))
    }

    /// Image under the Hopf map `q ↦ q i q̄`, as a unit vector in `R³`.
    /// Distances in the base `S²(1/2)` are half the angles between images.
    pub fn hopf_projection(&self, x: &Point) -> Result<[f64; 3], GeometryError> {
        let q = check_quaternion(x.coords())?;
        let v = hopf::qmul(&hopf::qmul(&q, &[0.0, 1.0, 0.0, 0.0]), &hopf::qconj(&q));
        Ok([v[1], v[2], v[3]])
    }

    /// Volume of the open geodesic ball of radius `r`.
    ///
    /// Saturates at the total volume for `r ≥ diameter`. Below that, the ball
    /// is described slice by slice over the base: at base offset `s` it
    /// contains the fiber phases `|ψ| < a(s)`, and Haar measure gives
    /// `vol = 2π ε ∫ 2 s a(s) ds`, evaluated by Gauss–Legendre panels split at
    /// the offsets where `a` reaches `π`.
    pub fn ball_volume_exact(&self, r: f64) -> Result<f64, GeometryError> {
        check_ball_radius(r)?;
        if r == 0.0 {
            return Ok(0.0);
        }
        if r >= self.diameter() {
            return Ok(self.volume());
        }
        let eps = self.epsilon;
        let integral = if r < FRAC_PI_2 {
            // β = asin(s) runs over [0, r); β = r (1 − v²) absorbs the
            // square-root edge of a(s) at β = r.
            let beta = |v: f64| r * (1.0 - v * v);
            let phase = |v: f64| hopf::near_slice_phase(eps, beta(v).sin(), r);
            piecewise(
                |v| {
                    let b = beta(v);
                    phase(v).min(PI) * (2.0 * b).sin() * 2.0 * r * v
                },
                |v| phase(v) - PI,
            )
        } else {
            let beta = |v: f64| FRAC_PI_2 * v;
            piecewise(
                |v| {
                    let b = beta(v);
                    hopf::slice_half_width(eps, b.sin(), r) * (2.0 * b).sin() * FRAC_PI_2
                },
                |v| r - hopf::invariant_distance(eps, beta(v).sin(), PI),
            )
        };
        Ok((TAU * eps * integral).min(self.volume()))
    }

    /// Monte-Carlo ball volume. Haar samples are drawn directly in the
    /// invariants: `s = sqrt(U)` and `|ψ|` uniform on `[0, π]`.
    pub fn ball_volume_mc(&self, r: f64, mc: &MonteCarlo) -> Result<Estimate, GeometryError> {
        check_ball_radius(r)?;
        mc.validate()?;
        if r == 0.0 {
            return Ok(Estimate::exact(0.0));
        }
        if r >= self.diameter() {
            return Ok(Estimate::exact(self.volume()));
        }
        let eps = self.epsilon;
        let hits = mc.count_hits(|rng| {
            let s = rng.random::<f64>().sqrt();
            let psi = PI * rng.random::<f64>();
            hopf::in_ball(eps, s, psi, r)
        });
        Ok(mc.estimate(hits, self.volume()))
    }
}

fn check_quaternion(coords: &[f64]) -> Result<Quat, GeometryError> {
    let q: Quat = coords
        .try_into()
        .map_err(|_| GeometryError::DimensionMismatch {
            expected: 4,
            found: coords.len(),
        })?;
    if q.iter().any(|c| !c.is_finite()) {
        return Err(GeometryError::NonFiniteCoordinate);
    }
    let norm = q.iter().map(|c| c * c).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > UNIT_TOLERANCE {
        return Err(GeometryError::NotUnitQuaternion { norm });
    }
    Ok(q)
}

/// `∫₀¹ f`, with breaks at the sign changes of `g` on a uniform scan.
fn piecewise<F, G>(f: F, g: G) -> f64
where
    F: Fn(f64) -> f64,
    G: Fn(f64) -> f64,
{
    let mut breaks = vec![0.0];
    let mut prev = (0.0, g(0.0));
    for k in 1..=KINK_SCAN {
        let v = k as f64 / KINK_SCAN as f64;
        let gv = g(v);
        if (gv > 0.0) != (prev.1 > 0.0) {
            let (mut lo, mut hi) = (prev.0, v);
            let lo_positive = prev.1 > 0.0;
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                if (g(mid) > 0.0) == lo_positive {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            breaks.push(0.5 * (lo + hi));
        }
        prev = (v, gv);
    }
    breaks.push(1.0);
    let rule = gauss_legendre(NODES);
    breaks
        .windows(2)
        .map(|w| {
            // smoothstep substitution flattens square-root edges at the breaks
            let len = w[1] - w[0];
            let g = |x: f64| f(w[0] + len * x * x * (3.0 - 2.0 * x)) * len * 6.0 * x * (1.0 - x);
            let h = 1.0 / PANELS as f64;
            (0..PANELS)
                .map(|p| {
                    let a = h * p as f64;
                    integrate(g, a, a + h, &rule)
                })
                .sum::<f64>()
        })
        .sum()
}
