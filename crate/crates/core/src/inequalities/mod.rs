//! Jackson-Nikolskii type inequalities obtained by keeping a single term of
//! the parametric quadrature sums, together with their extremal functions.
//!
//! | contour  | pointwise bound                                        |
//! |----------|--------------------------------------------------------|
//! | circle   | `|R|^{2m} / (m mu + 1) <= ||R||^{2m} / (2 pi r)`        |
//! | axis     | `|R|^{2m} / mu_* <= (m / pi) ||R||^{2m}`                |
//! | semiaxis | `|R(u^2)|^{2m} / mu_*(u) <= (m / pi) ||R||^{2m}_{1/sqrt x}` |
//! | segment  | `|R(x)|^{2m} / (m mu_0 + 1) <= ||R||^{2m}_omega / pi`    |

mod norms;
mod rational;
mod spf;
pub(crate) use spf::rho_p;
mod witness;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tol;

pub use norms::{lp_norm, lp_power, sup_modulus, NormPath, NormValue, NORM_PHI};
pub use rational::{
    alternative_check, baranov_constant, geometric_constant, mu_exact_constant, nikolskii_check,
    pointwise_bound, Alternative, Geometry,
};
pub use spf::{
    beta, hilbert_norm, sigma_comparison, spf_bounds, spf_d, spf_mixed_bound, spf_semiaxis_bound,
    y0, SemiaxisSpfReport, Sigma, SpfBounds, SpfD,
};
pub use witness::{
    extremal_witness, sharpness_suite, SharpnessCase, Witness, WitnessKind, WitnessParams,
};

/// The integer in `[p/2, 1 + p/2)`, i.e. `ceil(p/2)`. `p` must be positive.
pub fn m_p(p: f64) -> u32 {
    debug_assert!(p > 0.0);
    (p / 2.0).ceil().max(1.0) as u32
}

/// Outcome of checking `lhs <= rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
    pub holds: bool,
    pub sharp_gap: f64,
}

impl BoundReport {
    pub fn new(lhs: f64, rhs: f64) -> Self {
        Self {
            lhs,
            rhs,
            ratio: lhs / rhs,
            holds: lhs <= rhs * (1.0 + tol::BOUND_SLACK),
            sharp_gap: rhs - lhs,
        }
    }

    /// `|rhs - lhs| / |rhs|`.
    pub fn relative_gap(&self) -> f64 {
        self.sharp_gap.abs() / self.rhs.abs()
    }

    pub fn is_equality(&self) -> bool {
        self.relative_gap() <= tol::SHARPNESS
    }
}

/// Exponents of a `(q, p)` inequality, `0 < p < q <= inf`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NikolskiiParams {
    pub p: f64,
    pub q: f64,
    pub m_p: u32,
}

impl NikolskiiParams {
    pub fn new(p: f64, q: f64) -> Result<Self> {
        if !(p > 0.0 && p.is_finite()) {
            return Err(Error::BadParams(format!(
                "p = {p} must be positive and finite"
            )));
        }
        if !(q > p) {
            return Err(Error::BadParams(format!(
                "need q > p, got p = {p}, q = {q}"
            )));
        }
        Ok(Self { p, q, m_p: m_p(p) })
    }

    /// `1/p - 1/q` with `1/inf = 0`.
    pub fn exponent(&self) -> f64 {
        1.0 / self.p - recip(self.q)
    }
}

/// `1/x`, with `1/inf = 0`.
pub(crate) fn recip(x: f64) -> f64 {
    if x.is_infinite() {
        0.0
    } else {
        1.0 / x
    }
}

/// Conjugate exponent `x / (x - 1)`, with `inf' = 1`.
pub(crate) fn conjugate(x: f64) -> f64 {
    if x.is_infinite() {
        1.0
    } else {
        x / (x - 1.0)
    }
}
