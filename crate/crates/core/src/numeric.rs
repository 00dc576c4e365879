//! Small numerical helpers shared across modules.

use serde::{Deserialize, Serialize};

/// Below this magnitude the sin/sinh ratios switch to their Taylor series.
pub const SERIES_CUTOFF: f64 = 1e-4;

/// `sin(x)/x`, continuous at zero with value 1.
pub fn sinc(x: f64) -> f64 {
    if x.abs() < SERIES_CUTOFF {
        let x2 = x * x;
        1.0 - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sin() / x
    }
}

/// `sinh(x)/x`, continuous at zero with value 1.
pub fn sinhc(x: f64) -> f64 {
    if x.abs() < SERIES_CUTOFF {
        let x2 = x * x;
        1.0 + x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sinh() / x
    }
}

/// `(e^x - 1)/x`, continuous at zero with value 1.
pub fn exprel(x: f64) -> f64 {
    if x.abs() < SERIES_CUTOFF {
        1.0 + x / 2.0 + x * x / 6.0
    } else {
        x.exp_m1() / x
    }
}

/// Ordinary least-squares line `y = slope * x + intercept`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square of the residuals.
    pub rms: f64,
}

/// Fits a line through `(x, y)` pairs. Returns `None` for fewer than two
/// points or when every `x` coincides.
pub fn fit_line(points: &[(f64, f64)]) -> Option<LineFit> {
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    if sxx == 0.0 || !sxx.is_finite() {
        return None;
    }
    let sxy: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let sse: f64 = points
        .iter()
        .map(|p| (p.1 - slope * p.0 - intercept).powi(2))
        .sum();
    Some(LineFit {
        slope,
        intercept,
        rms: (sse / n).sqrt(),
    })
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    assert!(n >= 1);
    let mut rule = Vec::with_capacity(n);
    for k in 0..n {
        // Tricomi initial guess, then Newton on P_n.
        let mut x = (std::f64::consts::PI * (k as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, x);
        if d != 0.0 {
            dp = d;
        }
        rule.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    rule
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let n = n as f64;
    let dp = n * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Integrates `f` over `[a, b]` with an `n`-point Gauss–Legendre rule.
pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, rule: &[(f64, f64)]) -> f64 {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    rule.iter().map(|&(x, w)| w * f(mid + half * x)).sum::<f64>() * half
}

/// Formats with 17 significant digits, `.` decimal separator, no locale.
pub fn fmt_sig17(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("{x}")
    }
}

/// SplitMix64 finalizer, used to derive independent per-index seeds.
pub fn mix_seed(seed: u64, salt: u64) -> u64 {
    let mut z = seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_helpers_continuous_at_zero() {
        for f in [sinc as fn(f64) -> f64, sinhc, exprel] {
            assert_eq!(f(0.0), 1.0);
            let below = f(0.999_999 * SERIES_CUTOFF);
            let above = f(1.000_001 * SERIES_CUTOFF);
            assert!((below - above).abs() < 1e-9, "{below} vs {above}");
        }
    }

    #[test]
    fn series_branch_matches_direct_formula() {
        let x = 5e-5;
        assert!((sinc(x) - x.sin() / x).abs() < 1e-15);
        assert!((sinhc(x) - x.sinh() / x).abs() < 1e-15);
        assert!((exprel(x) - x.exp_m1() / x).abs() < 1e-12);
    }

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        let rule = gauss_legendre(8);
        // degree 15 is the highest exact degree for 8 nodes
        let got = integrate(|x| x.powi(14) + 3.0 * x.powi(3), -1.0, 1.0, &rule);
        assert!((got - 2.0 / 15.0).abs() < 1e-14);
        let got = integrate(f64::cos, 0.0, 1.0, &gauss_legendre(20));
        assert!((got - 1f64.sin()).abs() < 1e-15);
    }

    #[test]
    fn line_fit_recovers_exact_line() {
        let pts: Vec<_> = (0..10).map(|k| (k as f64, -2.0 * k as f64 + 1.0)).collect();
        let fit = fit_line(&pts).unwrap();
        assert!((fit.slope + 2.0).abs() < 1e-14);
        assert!((fit.intercept - 1.0).abs() < 1e-13);
        assert!(fit.rms < 1e-13);
        assert!(fit_line(&[(1.0, 1.0), (1.0, 2.0)]).is_none());
    }

    #[test]
    fn sig17_formatting() {
        assert_eq!(fmt_sig17(std::f64::consts::PI), "3.1415926535897931e0");
        let parsed: f64 = fmt_sig17(0.1).parse().unwrap();
        assert_eq!(parsed, 0.1);
    }
}
