use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{FiniteMetricSpace, MetricError};
use crate::geometry::hopf::{qmul, Quat};
use crate::geometry::{BergerSphere, FlatTorus, Member, Point};

/// Candidate pools larger than this are refused.
pub const MAX_POOL: usize = 4_000_000;

/// Result of [`epsilon_net`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpsilonNet {
    pub space: FiniteMetricSpace,
    pub points: Vec<Point>,
    /// Certified upper bound on the covering radius actually achieved.
    pub covering_radius: f64,
    /// True when `max_points` ran out before the radius reached `eps`.
    pub exhausted: bool,
}

pub(crate) struct NetCore {
    pub points: Vec<Point>,
    pub covering_radius: f64,
    pub exhausted: bool,
}

/// Greedy farthest-point ε-net of a model manifold.
///
/// Candidates come from a structured grid whose fill radius `h` is known, so
/// the manifold's covering radius is at most the grid's covering radius plus
/// `h`. Points are added from a seeded random start until that certified
/// radius drops to `eps` or `max_points` is reached; in the second case the
/// net is returned with `exhausted` set.
pub fn epsilon_net(
    member: &Member,
    eps: f64,
    seed: u64,
    max_points: usize,
) -> Result<EpsilonNet, MetricError> {
    let core = build_net(member, eps, seed, max_points)?;
    let n = core.points.len();
    let rows: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        0.0
                    } else {
                        // evaluate each pair once, in a fixed orientation
                        let (a, b) = (i.min(j), i.max(j));
                        point_distance(member, &core.points[a], &core.points[b])
                    }
                })
                .collect()
        })
        .collect();
    let labels = (0..n).map(|i| format!("p{i}")).collect();
    let space = FiniteMetricSpace::new(labels, rows)?;
    Ok(EpsilonNet {
        space,
        points: core.points,
        covering_radius: core.covering_radius,
        exhausted: core.exhausted,
    })
}

fn point_distance(member: &Member, a: &Point, b: &Point) -> f64 {
    match member {
        Member::Torus(t) => t.distance_unchecked(a.coords(), b.coords()),
        Member::Berger(s) => s
            .distance(a, b)
            .expect("net points are unit quaternions"),
    }
}

pub(crate) fn build_net(
    member: &Member,
    eps: f64,
    seed: u64,
    max_points: usize,
) -> Result<NetCore, MetricError> {
    if !(eps.is_finite() && eps > 0.0) {
        return Err(MetricError::InvalidScale(eps));
    }
    if max_points == 0 {
        return Err(MetricError::NoPointBudget);
    }
    let diam = member.diameter();
    let pool = Pool::new(member, (0.25 * eps).min(diam))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut next = rng.random_range(0..pool.len());
    let mut nearest = vec![f64::INFINITY; pool.len()];
    let mut centers = Vec::new();
    loop {
        centers.push(next);
        pool.absorb(next, &mut nearest);
        let (far, radius) = nearest
            .iter()
            .enumerate()
            .fold((0, 0.0), |(bi, bv), (i, &v)| if v > bv { (i, v) } else { (bi, bv) });
        let certified = (radius + pool.fill).min(diam);
        let done = certified <= eps;
        if done || centers.len() >= max_points {
            return Ok(NetCore {
                points: centers.iter().map(|&c| pool.point(c)).collect(),
                covering_radius: certified,
                exhausted: !done,
            });
        }
        next = far;
    }
}

enum Grid {
    Torus {
        torus: FlatTorus,
        coords: Vec<Vec<f64>>,
    },
    Berger {
        sphere: BergerSphere,
        quats: Vec<Quat>,
        images: Vec<[f64; 3]>,
    },
}

struct Pool {
    grid: Grid,
    fill: f64,
}

impl Pool {
    fn new(member: &Member, target: f64) -> Result<Self, MetricError> {
        match member {
            Member::Torus(t) => torus_pool(t, target),
            Member::Berger(b) => berger_pool(b, target),
        }
    }

    fn len(&self) -> usize {
        match &self.grid {
            Grid::Torus { coords, .. } => coords.len(),
            Grid::Berger { quats, .. } => quats.len(),
        }
    }

    fn point(&self, i: usize) -> Point {
        match &self.grid {
            Grid::Torus { coords, .. } => Point::new(coords[i].clone()),
            Grid::Berger { quats, .. } => Point::new(quats[i].to_vec()),
        }
    }

    /// Lowers `nearest` to account for a new center `c`.
    fn absorb(&self, c: usize, nearest: &mut [f64]) {
        match &self.grid {
            Grid::Torus { torus, coords } => {
                let cc = &coords[c];
                nearest.par_iter_mut().zip(coords).for_each(|(d, p)| {
                    *d = d.min(torus.distance_unchecked(cc, p));
                });
            }
            Grid::Berger {
                sphere,
                quats,
                images,
            } => {
                let (qc, nc) = (&quats[c], &images[c]);
                nearest
                    .par_iter_mut()
                    .zip(quats.par_iter().zip(images))
                    .for_each(|(d, (q, n))| {
                        // the base distance never exceeds the true distance
                        let dot = (nc[0] * n[0] + nc[1] * n[1] + nc[2] * n[2]).clamp(-1.0, 1.0);
                        if 0.5 * dot.acos() < *d {
                            *d = d.min(sphere.distance_quat(qc, q));
                        }
                    });
            }
        }
    }
}

fn check_pool(size: f64) -> Result<(), MetricError> {
    if size > MAX_POOL as f64 {
        Err(MetricError::PoolTooLarge { size: size as u64, max: MAX_POOL })
    } else {
        Ok(())
    }
}

/// Product grid with spacing `h_j` per factor; fill radius `½ sqrt(Σ h_j²)`.
fn torus_pool(torus: &FlatTorus, target: f64) -> Result<Pool, MetricError> {
    let step = 2.0 * target / (torus.dim() as f64).sqrt();
    let counts: Vec<usize> = torus
        .periods()
        .map(|p| ((p / step).ceil() as usize).max(1))
        .collect();
    check_pool(counts.iter().map(|&c| c as f64).product())?;
    let spacing: Vec<f64> = torus
        .periods()
        .zip(&counts)
        .map(|(p, &c)| p / c as f64)
        .collect();
    let fill = 0.5 * spacing.iter().map(|h| h * h).sum::<f64>().sqrt();
    let mut coords = vec![Vec::new()];
    for (&c, &h) in counts.iter().zip(&spacing) {
        coords = coords
            .into_iter()
            .flat_map(|prefix| {
                (0..c).map(move |k| {
                    let mut v = prefix.clone();
                    v.push(h * k as f64);
                    v
                })
            })
            .collect();
    }
    Ok(Pool {
        grid: Grid::Torus {
            torus: torus.clone(),
            coords,
        },
        fill,
    })
}

/// Latitude-longitude grid on the base, lifted through the Hopf map, times
/// equally spaced fiber phases.
///
/// With ring spacing and in-ring spacing at most `U` on the unit sphere, every
/// point is within angle `U` of the grid, hence within `U/2` in the base
/// `S²(1/2)`. Horizontal lifting then adds at most half a fiber gap.
fn berger_pool(sphere: &BergerSphere, target: f64) -> Result<Pool, MetricError> {
    let base_fill = 0.5 * target;
    let unit = 2.0 * base_fill;
    let rings = (PI / unit).ceil() as usize;
    let fiber_len = TAU * sphere.epsilon();
    let phases = ((fiber_len / target).ceil() as usize).max(1);
    let ring_counts: Vec<usize> = (0..rings)
        .map(|i| {
            let theta = PI * (i as f64 + 0.5) / rings as f64;
            ((TAU * theta.sin() / unit).ceil() as usize).max(1)
        })
        .collect();
    check_pool(ring_counts.iter().sum::<usize>() as f64 * phases as f64)?;
    let mut quats = Vec::new();
    let mut images = Vec::new();
    for (i, &count) in ring_counts.iter().enumerate() {
        let theta = PI * (i as f64 + 0.5) / rings as f64;
        let shift = 0.5 * (i % 2) as f64;
        for j in 0..count {
            let phi = TAU * (j as f64 + shift) / count as f64;
            let n = [theta.cos(), theta.sin() * phi.cos(), theta.sin() * phi.sin()];
            let lift = hopf_lift(n);
            for k in 0..phases {
                let a = TAU * k as f64 / phases as f64;
                quats.push(qmul(&lift, &[a.cos(), a.sin(), 0.0, 0.0]));
                images.push(n);
            }
        }
    }
    let fill = base_fill + PI * sphere.epsilon() / phases as f64;
    Ok(Pool {
        grid: Grid::Berger {
            sphere: *sphere,
            quats,
            images,
        },
        fill,
    })
}

/// A unit quaternion `q` with `q i q̄ = n`: the shortest rotation taking `i`
/// to `n`.
pub(crate) fn hopf_lift(n: [f64; 3]) -> Quat {
    let q = [1.0 + n[0], 0.0, -n[2], n[1]];
    let norm = q.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm < 1e-8 {
        return [0.0, 0.0, 1.0, 0.0];
    }
    q.map(|v| v / norm)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lift_projects_back() {
        let b = BergerSphere::new(0.5).unwrap();
        for n in [
            [1.0, 0.0, 0.0],
            [-1.0, 0.0, 0.0],
            [0.0, 0.6, 0.8],
            [-0.48, 0.6, 0.64],
        ] {
            let q = hopf_lift(n);
            let img = b.hopf_projection(&Point::new(q.to_vec())).unwrap();
            for k in 0..3 {
                assert!((img[k] - n[k]).abs() < 1e-12, "{n:?} -> {img:?}");
            }
        }
    }

    #[test]
    fn circle_net_at_half_pi() {
        let m = Member::Torus(FlatTorus::new(vec![1.0]).unwrap());
        for seed in 0..5 {
            let net = epsilon_net(&m, PI / 2.0, seed, 100).unwrap();
            assert!(net.points.len() <= 4);
            assert!(net.covering_radius <= PI / 2.0);
            assert!(!net.exhausted);
        }
    }

    #[test]
    fn coarse_scale_gives_single_point() {
        let m = Member::Berger(BergerSphere::new(0.3).unwrap());
        let net = epsilon_net(&m, 10.0, 0, 10).unwrap();
        assert_eq!(net.points.len(), 1);
        assert_eq!(net.space.len(), 1);
    }

    #[test]
    fn budget_exhaustion_is_flagged() {
        let m = Member::Torus(FlatTorus::new(vec![1.0, 1.0]).unwrap());
        let net = epsilon_net(&m, 0.2, 0, 3).unwrap();
        assert_eq!(net.points.len(), 3);
        assert!(net.exhausted);
        assert!(net.covering_radius > 0.2);
    }

    #[test]
    fn rejects_bad_arguments() {
        let m = Member::Torus(FlatTorus::new(vec![1.0]).unwrap());
        assert!(matches!(epsilon_net(&m, 0.0, 0, 3), Err(MetricError::InvalidScale(_))));
        assert!(matches!(epsilon_net(&m, 0.1, 0, 0), Err(MetricError::NoPointBudget)));
    }
}
