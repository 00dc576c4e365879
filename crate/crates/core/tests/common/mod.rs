#![allow(dead_code)]

use collapse_lab::FiniteMetricSpace;
use rand::Rng;

/// Euclidean distances of random points in the plane.
pub fn random_space<R: Rng>(rng: &mut R, n: usize) -> FiniteMetricSpace {
    let pts: Vec<(f64, f64)> = (0..n)
        .map(|_| (rng.random_range(0.0..2.0), rng.random_range(0.0..2.0)))
        .collect();
    let dist = pts
        .iter()
        .map(|a| pts.iter().map(|b| (a.0 - b.0).hypot(a.1 - b.1)).collect())
        .collect();
    FiniteMetricSpace::from_matrix(dist).unwrap()
}

/// Half the least distortion over every relation with full projections,
/// enumerated as bitmasks. Only for `|X| · |Y| ≤ 20`.
pub fn brute_force_gh(x: &FiniteMetricSpace, y: &FiniteMetricSpace) -> f64 {
    let (n, m) = (x.len(), y.len());
    assert!(n * m <= 20);
    let mut best = f64::INFINITY;
    for mask in 1u32..(1 << (n * m)) {
        let pairs: Vec<(usize, usize)> = (0..n * m)
            .filter(|b| mask >> b & 1 == 1)
            .map(|b| (b / m, b % m))
            .collect();
        let covers_x = (0..n).all(|a| pairs.iter().any(|p| p.0 == a));
        let covers_y = (0..m).all(|c| pairs.iter().any(|p| p.1 == c));
        if !(covers_x && covers_y) {
            continue;
        }
        let mut dis = 0.0f64;
        for &(a, c) in &pairs {
            for &(b, d) in &pairs {
                dis = dis.max((x.dist(a, b) - y.dist(c, d)).abs());
            }
        }
        best = best.min(dis);
    }
    0.5 * best
}

/// Classical RK4 for `ρ' = g1 ℓ² + g2 ℓ ρ`, `ρ(0) = 0`, up to `t = 1`.
pub fn rk4_rho(g1: f64, g2: f64, ell: f64, step: f64) -> f64 {
    let f = |rho: f64| g1 * ell * ell + g2 * ell * rho;
    let steps = (1.0 / step).round() as usize;
    let h = 1.0 / steps as f64;
    let mut rho = 0.0;
    for _ in 0..steps {
        let k1 = f(rho);
        let k2 = f(rho + 0.5 * h * k1);
        let k3 = f(rho + 0.5 * h * k2);
        let k4 = f(rho + h * k3);
        rho += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    rho
}

/// Wrapped distance on a torus by scanning lattice shifts in `−wraps..=wraps`.
pub fn lattice_distance(radii: &[f64], x: &[f64], y: &[f64], wraps: i32) -> f64 {
    let mut best = f64::INFINITY;
    let n = radii.len();
    let total = (2 * wraps + 1).pow(n as u32);
    for code in 0..total {
        let mut c = code;
        let mut sq = 0.0;
        for j in 0..n {
            let shift = (c % (2 * wraps + 1)) - wraps;
            c /= 2 * wraps + 1;
            let d = y[j] - x[j] + f64::from(shift) * std::f64::consts::TAU * radii[j];
            sq += d * d;
        }
        best = best.min(sq.sqrt());
    }
    best
}
