use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{nonnegative, positive, BoundsError};
use crate::numeric::{exprel, sinc, sinhc};

/// Largest fiber dimension accepted; `4^k k!` leaves double range soon after.
pub const MAX_FIBER_DIM: u32 = 20;

/// Data of a bounded Riemannian submersion and a loop length.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SubmersionBoundInput {
    /// Bound on the A-tensor.
    pub c_a: f64,
    /// Bound on the T-tensor.
    pub c_t: f64,
    /// Fiber dimension.
    pub k: u32,
    /// `|sec| ≤ K` on the total space.
    pub cap_k: f64,
    /// Loop length `ℓ`.
    pub ell: f64,
}

impl SubmersionBoundInput {
    pub fn new(c_a: f64, c_t: f64, k: u32, cap_k: f64, ell: f64) -> Result<Self, BoundsError> {
        let input = Self {
            c_a,
            c_t,
            k,
            cap_k,
            ell,
        };
        input.validate()?;
        Ok(input)
    }

    /// Input whose loop is the short loop at a point of injectivity radius
    /// `inj_m`, that is `ℓ = 2 inj_m`.
    pub fn for_injectivity(
        c_a: f64,
        c_t: f64,
        k: u32,
        cap_k: f64,
        inj_m: f64,
    ) -> Result<Self, BoundsError> {
        Self::new(c_a, c_t, k, cap_k, 2.0 * inj_m)
    }

    pub fn with_ell(&self, ell: f64) -> Result<Self, BoundsError> {
        Self::new(self.c_a, self.c_t, self.k, self.cap_k, ell)
    }

    /// `(λ, Λ) = (√K, sqrt(K + 3 C_A²))`.
    pub fn scales(&self) -> (f64, f64) {
        (
            self.cap_k.sqrt(),
            (self.cap_k + 3.0 * self.c_a * self.c_a).sqrt(),
        )
    }

    /// Upper limit `2π/Λ` for `ℓ`, infinite in the flat case.
    pub fn ell_limit(&self) -> f64 {
        let (_, cap_lambda) = self.scales();
        if cap_lambda > 0.0 {
            2.0 * PI / cap_lambda
        } else {
            f64::INFINITY
        }
    }

    pub fn validate(&self) -> Result<(), BoundsError> {
        nonnegative("c_a", self.c_a)?;
        nonnegative("c_t", self.c_t)?;
        nonnegative("K", self.cap_k)?;
        positive("ell", self.ell)?;
        if self.k == 0 || self.k > MAX_FIBER_DIM {
            return Err(BoundsError::FiberDimension {
                k: self.k,
                max: MAX_FIBER_DIM,
            });
        }
        let limit = self.ell_limit();
        if self.ell >= limit {
            return Err(BoundsError::LoopTooLong {
                ell: self.ell,
                limit,
            });
        }
        Ok(())
    }
}

/// Every constant of the loop-length estimate `l(β₁) + l(β₂) ≤ C ℓ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundBreakdown {
    pub q_t: f64,
    pub q_s_tilde: f64,
    pub g1: f64,
    pub g2: f64,
    pub p_bound: f64,
    pub l_lipschitz: f64,
    pub c_total: f64,
}

/// Evaluates the constants for one input.
///
/// ```text
/// Q_t  = (Λ/λ) sinh(λℓ/2) / sin(Λℓ/2)        Q̃_s = sinh(λℓ/2) / (λℓ/2) · ½
/// G₁   = k C_A Q̃_s Q_t (1 + 4^k k!)           G₂  = k Q_t (C_T + 4^k k! C_A)
/// P    = (G₁/G₂)(e^{G₂ℓ} − 1) + G₁ ℓ e^{G₂ℓ}   L   = e^{C_T ℓ}      C = P + L
/// ```
pub fn compute_breakdown(input: &SubmersionBoundInput) -> Result<BoundBreakdown, BoundsError> {
    input.validate()?;
    let (lambda, cap_lambda) = input.scales();
    let ell = input.ell;
    let half = 0.5 * ell;
    let k = f64::from(input.k);
    let q_t = sinhc(lambda * half) / sinc(cap_lambda * half);
    let q_s_tilde = 0.5 * sinhc(lambda * half);
    let factorial = combinatorial_factor(input.k);
    let g1 = k * input.c_a * q_s_tilde * q_t * (1.0 + factorial);
    let g2 = k * q_t * (input.c_t + factorial * input.c_a);
    let growth = (g2 * ell).exp();
    let p_bound = g1 * ell * exprel(g2 * ell) + g1 * ell * growth;
    let l_lipschitz = (input.c_t * ell).exp();
    let out = BoundBreakdown {
        q_t,
        q_s_tilde,
        g1,
        g2,
        p_bound,
        l_lipschitz,
        c_total: p_bound + l_lipschitz,
    };
    if !out.c_total.is_finite() || !p_bound.is_finite() {
        return Err(BoundsError::Overflow("P = G₁ℓ(exprel(G₂ℓ) + e^{G₂ℓ})"));
    }
    Ok(out)
}

/// `4^k · k!`.
fn combinatorial_factor(k: u32) -> f64 {
    (1..=k).fold(1.0, |acc, j| acc * 4.0 * f64::from(j))
}

/// Solution at `t = 1` of `ρ' = g1 ℓ² + g2 ℓ ρ`, `ρ(0) = 0`:
/// `(g1/g2) ℓ (e^{g2 ℓ} − 1)`, continued by `g1 ℓ²` at `g2 = 0`.
pub fn ode_rho_closed_form(g1: f64, g2: f64, ell: f64) -> f64 {
    g1 * ell * ell * exprel(g2 * ell)
}

/// `C · inj_m` for an input built with [`SubmersionBoundInput::for_injectivity`].
pub fn fiber_inj_bound(input: &SubmersionBoundInput) -> Result<f64, BoundsError> {
    Ok(compute_breakdown(input)?.c_total * 0.5 * input.ell)
}

/// One row of [`tau_profile`]: the corrections that vanish as `ℓ → 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TauRow {
    pub ell: f64,
    pub p: f64,
    pub l_minus_1: f64,
    pub c_minus_1: f64,
}

/// Evaluates `(P, L − 1, C − 1)` along a grid of loop lengths, keeping every
/// other field of `base`.
pub fn tau_profile(base: &SubmersionBoundInput, grid: &[f64]) -> Result<Vec<TauRow>, BoundsError> {
    grid.iter()
        .map(|&ell| {
            let b = compute_breakdown(&base.with_ell(ell)?)?;
            let l_minus_1 = (base.c_t * ell).exp_m1();
            Ok(TauRow {
                ell,
                p: b.p_bound,
                l_minus_1,
                c_minus_1: b.p_bound + l_minus_1,
            })
        })
        .collect()
}
