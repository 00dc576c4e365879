//! Geodesics and distances on Berger spheres.
//!
//! `S³` is the unit quaternions with the left-invariant metric
//! `|q·ξ|² = ε² ξ_i² + ξ_j² + ξ_k²` for pure-imaginary `ξ`; the `i` direction
//! is tangent to the Hopf fibers `q · e^{iφ}`. Left multiplication and the
//! right `U(1)` action are isometries, so the distance from `1` to
//! `g = a + bi + cj + dk` only depends on
//!
//! - `s = |c + di|`, whose arcsine is the distance of the projected points in
//!   the base `S²(1/2)`, and
//! - `ψ = arg(a + bi)`, the fiber phase.
//!
//! Unit-speed geodesics from `1` with left-trivialized initial velocity
//! `(x, y, 0)`, `ε² x² + y² = 1`, have the closed form
//!
//! ```text
//! γ(t) = exp(t · (ε² x, y, 0)) · exp(t (1 − ε²) x · i)
//! ```
//!
//! With `u = ε x` (the fiber share of the speed) and `m = sqrt(ε² u² + 1 − u²)`
//! the endpoint has `s = sin(m t) · sqrt(1 − u²) / m`. For a target `s` this
//! leaves two branches per `u`, `m t = α` ("near") and `m t = π − α` ("far"),
//! with `α = asin(s m / sqrt(1 − u²))`. Along each branch the endpoint phase is
//! a continuous function of `u`, and the distance is the smallest `t` at which
//! the phase hits `ψ` modulo `2π`.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, TAU};

pub(crate) type Quat = [f64; 4];

pub(crate) fn qmul(p: &Quat, q: &Quat) -> Quat {
    let [a1, b1, c1, d1] = *p;
    let [a2, b2, c2, d2] = *q;
    [
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    ]
}

pub(crate) fn qconj(q: &Quat) -> Quat {
    [q[0], -q[1], -q[2], -q[3]]
}

/// `exp` of a pure-imaginary quaternion.
pub(crate) fn qexp(v: [f64; 3]) -> Quat {
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    if n == 0.0 {
        return [1.0, 0.0, 0.0, 0.0];
    }
    let k = n.sin() / n;
    [n.cos(), k * v[0], k * v[1], k * v[2]]
}

/// Invariants `(s, |ψ|)` of `p̄ q`, with `|ψ| ∈ [0, π]`.
pub(crate) fn relative_invariants(p: &Quat, q: &Quat) -> (f64, f64) {
    let g = qmul(&qconj(p), q);
    let s = g[2].hypot(g[3]).min(1.0);
    (s, g[1].atan2(g[0]).abs())
}

/// Point reached at time 1 by the geodesic from `1` with left-trivialized
/// initial velocity `v = (fiber, horizontal, horizontal)`.
pub(crate) fn exp_at_identity(eps: f64, v: [f64; 3]) -> Quat {
    let m = [eps * eps * v[0], v[1], v[2]];
    qmul(&qexp(m), &qexp([(1.0 - eps * eps) * v[0], 0.0, 0.0]))
}

/// Distances on the same fiber below this base offset use the fiber formula.
const FIBER_SNAP: f64 = 1e-13;
const INITIAL_CELLS: usize = 32;
const MAX_PHASE_STEP: f64 = FRAC_PI_4;
const MIN_CELL: f64 = 1e-13;
const JUNCTION_GAP: f64 = 1e-9;

pub(crate) fn diameter(eps: f64) -> f64 {
    if eps * eps <= 0.5 {
        FRAC_PI_2 / (1.0 - eps * eps).sqrt()
    } else {
        PI * eps
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Branch {
    Near,
    Far,
}

/// Time and lifted phase of the geodesic with fiber share `u = umax sin θ`
/// when it reaches base offset `s` on the given branch.
fn branch_state(eps: f64, s: f64, umax: f64, theta: f64, branch: Branch) -> (f64, f64) {
    let u = umax * theta.sin();
    let y = (1.0 - u * u).max(0.0).sqrt();
    let m = (eps * eps * u * u + y * y).sqrt();
    // y² − s² m² = (1 − s² (1 − ε²)) (umax² − u²), so cos α stays accurate
    // near the junction u = ±umax where α = π/2.
    let spread = (1.0 - s * s * (1.0 - eps * eps)).sqrt() * umax * theta.cos().abs();
    let alpha = (s * m).atan2(spread);
    let lean = eps * u / m;
    let (a, angle) = match branch {
        Branch::Near => (alpha, (alpha.sin() * lean).atan2(alpha.cos())),
        Branch::Far => {
            let a = PI - alpha;
            (a, PI - (a.sin() * lean).atan2(-a.cos()))
        }
    };
    let t = a / m;
    (t, angle + (1.0 - eps * eps) * (u / eps) * t)
}

fn u_max(eps: f64, s: f64) -> f64 {
    ((1.0 - s * s) / (1.0 - s * s * (1.0 - eps * eps))).sqrt()
}

struct Cell {
    key: f64,
    lo: f64,
    hi: f64,
    at_lo: (f64, f64),
    at_hi: (f64, f64),
    branch: Branch,
}

impl PartialEq for Cell {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}

impl Eq for Cell {}

impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cell {
    // min-heap on key
    fn cmp(&self, other: &Self) -> Ordering {
        other.key.total_cmp(&self.key)
    }
}

impl Cell {
    fn new(lo: f64, hi: f64, at_lo: (f64, f64), at_hi: (f64, f64), branch: Branch) -> Self {
        let (ta, tb) = (at_lo.0, at_hi.0);
        Self {
            key: ta.min(tb) - (ta - tb).abs(),
            lo,
            hi,
            at_lo,
            at_hi,
            branch,
        }
    }
}

/// Distance from `1` to any point with invariants `(s, ψ)`.
pub(crate) fn invariant_distance(eps: f64, s: f64, psi: f64) -> f64 {
    let psi = fold_phase(psi);
    if s <= FIBER_SNAP {
        return eps * psi;
    }
    if s >= 1.0 {
        return FRAC_PI_2;
    }
    let cap = (s.asin() + eps * psi).min(diameter(eps));
    shortest_crossing(eps, s, psi, cap).unwrap_or(cap)
}

/// `|ψ|` reduced to `[0, π]`.
pub(crate) fn fold_phase(psi: f64) -> f64 {
    let w = (psi + PI).rem_euclid(TAU) - PI;
    w.abs()
}

/// Smallest geodesic time `≤ cap` reaching `(s, ψ)`, if any.
fn shortest_crossing(eps: f64, s: f64, psi: f64, cap: f64) -> Option<f64> {
    let umax = u_max(eps, s);
    let state = |theta: f64, branch| branch_state(eps, s, umax, theta, branch);
    let mut heap = BinaryHeap::new();
    for branch in [Branch::Near, Branch::Far] {
        let grid: Vec<f64> = (0..=INITIAL_CELLS)
            .map(|k| -FRAC_PI_2 + PI * k as f64 / INITIAL_CELLS as f64)
            .collect();
        let vals: Vec<_> = grid.iter().map(|&th| state(th, branch)).collect();
        for k in 0..INITIAL_CELLS {
            heap.push(Cell::new(grid[k], grid[k + 1], vals[k], vals[k + 1], branch));
        }
    }
    let mut best = cap;
    let mut found = None;
    // The branches meet at u = ±umax; close the rounding gap between them.
    for theta in [-FRAC_PI_2, FRAC_PI_2] {
        let (tn, pn) = state(theta, Branch::Near);
        let (tf, pf) = state(theta, Branch::Far);
        let pf = pf - TAU * ((pf - pn) / TAU).round();
        if (pf - pn).abs() > JUNCTION_GAP {
            continue;
        }
        let t = tn.max(tf);
        let n_lo = ((pn.min(pf) - psi) / TAU).ceil() as i64;
        let n_hi = ((pn.max(pf) - psi) / TAU).floor() as i64;
        if n_lo <= n_hi && t <= best {
            best = t;
            found = Some(t);
        }
    }
    while let Some(cell) = heap.pop() {
        if cell.key > best {
            break;
        }
        let (pa, pb) = (cell.at_lo.1, cell.at_hi.1);
        if (pb - pa).abs() > MAX_PHASE_STEP && cell.hi - cell.lo > MIN_CELL {
            let mid = 0.5 * (cell.lo + cell.hi);
            let at_mid = state(mid, cell.branch);
            heap.push(Cell::new(cell.lo, mid, cell.at_lo, at_mid, cell.branch));
            heap.push(Cell::new(mid, cell.hi, at_mid, cell.at_hi, cell.branch));
            continue;
        }
        let n_lo = ((pa.min(pb) - psi) / TAU).ceil() as i64;
        let n_hi = ((pa.max(pb) - psi) / TAU).floor() as i64;
        for n in n_lo..=n_hi {
            let target = psi + TAU * n as f64;
            let t = refine_crossing(&state, &cell, target);
            if t <= best {
                best = t;
                found = Some(t);
            }
        }
    }
    found
}

/// Illinois-type false position for `phase(θ) = target` inside a cell.
fn refine_crossing<F>(state: &F, cell: &Cell, target: f64) -> f64
where
    F: Fn(f64, Branch) -> (f64, f64),
{
    let (mut a, mut b) = (cell.lo, cell.hi);
    let (mut fa, mut fb) = (cell.at_lo.1 - target, cell.at_hi.1 - target);
    let (mut ta, mut tb) = (cell.at_lo.0, cell.at_hi.0);
    if fa == 0.0 {
        return ta;
    }
    if fb == 0.0 {
        return tb;
    }
    let mut side = 0i8;
    for _ in 0..100 {
        let c = if fa != fb {
            (a * fb - b * fa) / (fb - fa)
        } else {
            0.5 * (a + b)
        };
        let c = if c > a.min(b) && c < a.max(b) {
            c
        } else {
            0.5 * (a + b)
        };
        let (tc, pc) = state(c, cell.branch);
        let fc = pc - target;
        if fc == 0.0 || (b - a).abs() < 1e-15 {
            return tc;
        }
        if (fc > 0.0) == (fb > 0.0) {
            b = c;
            fb = fc;
            tb = tc;
            if side == 1 {
                fa *= 0.5;
            }
            side = 1;
        } else {
            a = c;
            fa = fc;
            ta = tc;
            if side == -1 {
                fb *= 0.5;
            }
            side = -1;
        }
        if fa.abs().min(fb.abs()) < 1e-14 {
            break;
        }
    }
    if fa.abs() < fb.abs() {
        ta
    } else {
        tb
    }
}

/// Phase reached by the near branch at time `r` from base offset `s`,
/// valid for `r < π/2`. Zero when `asin(s) ≥ r`.
///
/// Below `π/2` only near-branch geodesics are shorter than `r`. On that branch
/// the time and the phase both increase with `u ≥ 0`, so the fiber slice of
/// the open ball `B_r(1)` at offset `s` is `(−a, a)` with `a` this phase,
/// clipped to `π`.
pub(crate) fn near_slice_phase(eps: f64, s: f64, r: f64) -> f64 {
    debug_assert!(r < FRAC_PI_2);
    if s <= 0.0 {
        return r / eps;
    }
    if s >= 1.0 || s.asin() >= r {
        return 0.0;
    }
    let umax = u_max(eps, s);
    let state = |theta: f64| branch_state(eps, s, umax, theta, Branch::Near);
    // time at θ = 0 is asin(s) < r, at θ = π/2 it is π / (2 m) ≥ π/2 > r
    let (mut lo, mut hi) = (0.0, FRAC_PI_2);
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if state(mid).0 < r {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    state(lo).1
}

pub(crate) fn near_slice_half_width(eps: f64, s: f64, r: f64) -> f64 {
    near_slice_phase(eps, s, r).min(PI)
}

/// Half-width of the fiber slice for any `r`, by bisection on the phase.
/// The distance is increasing in `|ψ|` at fixed `s`.
pub(crate) fn slice_half_width(eps: f64, s: f64, r: f64) -> f64 {
    if r < FRAC_PI_2 {
        return near_slice_half_width(eps, s, r);
    }
    if invariant_distance(eps, s, PI) < r {
        return PI;
    }
    if invariant_distance(eps, s, 0.0) >= r {
        return 0.0;
    }
    let (mut lo, mut hi) = (0.0, PI);
    for _ in 0..48 {
        let mid = 0.5 * (lo + hi);
        if invariant_distance(eps, s, mid) < r {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Whether `(s, |ψ|)` lies in the open ball of radius `r` around `1`.
pub(crate) fn in_ball(eps: f64, s: f64, psi_abs: f64, r: f64) -> bool {
    let base = s.asin();
    if base >= r {
        return false;
    }
    if base + eps * psi_abs < r {
        return true;
    }
    if r < FRAC_PI_2 {
        psi_abs < near_slice_half_width(eps, s, r)
    } else {
        invariant_distance(eps, s, psi_abs) < r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn invariants_of(q: &Quat) -> (f64, f64) {
        relative_invariants(&[1.0, 0.0, 0.0, 0.0], q)
    }

    #[test]
    fn round_sphere_matches_great_circle_distance() {
        let qs: [Quat; 4] = [
            [0.5, 0.5, 0.5, 0.5],
            [0.0, 0.0, 1.0, 0.0],
            [-0.6, 0.0, 0.0, 0.8],
            [0.1, -0.7, 0.7, 0.1],
        ];
        for q in qs {
            let n = q.iter().map(|v| v * v).sum::<f64>().sqrt();
            let q = q.map(|v| v / n);
            let (s, psi) = invariants_of(&q);
            let d = invariant_distance(1.0, s, psi);
            assert!((d - q[0].clamp(-1.0, 1.0).acos()).abs() < 1e-12, "{q:?}: {d}");
        }
    }

    #[test]
    fn fiber_points_use_fiber_length() {
        let eps = 0.3;
        assert!((invariant_distance(eps, 0.0, 2.0) - 0.6).abs() < 1e-15);
        assert!((invariant_distance(eps, 0.0, -2.0) - 0.6).abs() < 1e-15);
        assert!((invariant_distance(eps, 0.0, PI) - eps * PI).abs() < 1e-15);
    }

    #[test]
    fn horizontal_points_use_base_distance() {
        for eps in [0.01, 0.3, 0.9] {
            for s in [0.1, 0.5, 0.99] {
                let d = invariant_distance(eps, s, 0.0);
                assert!((d - f64::asin(s)).abs() < 1e-12, "eps {eps} s {s}: {d}");
            }
        }
    }

    #[test]
    fn closed_form_geodesic_lands_where_solver_says() {
        let eps = 0.4;
        for (u, t) in [(0.3, 0.7), (-0.6, 1.1), (0.9, 0.5)] {
            let x = u / eps;
            let y = (1.0f64 - u * u).sqrt();
            let q = exp_at_identity(eps, [x * t, y * t, 0.0]);
            let (s, psi) = invariants_of(&q);
            let d = invariant_distance(eps, s, psi);
            // geodesics minimize at least for short times
            assert!(d <= t + 1e-12, "u {u} t {t}: d {d}");
        }
    }

    #[test]
    fn near_slice_matches_distance_level_set() {
        let eps = 0.2;
        let r = 1.0;
        for s in [0.05, 0.3, 0.6, 0.8] {
            let a = near_slice_half_width(eps, s, r);
            assert!(a > 0.0 && a <= PI);
            if a < PI {
                let d = invariant_distance(eps, s, a);
                assert!((d - r).abs() < 1e-9, "s {s}: a {a} d {d}");
            }
        }
    }
}
