//! Inequalities for simple partial fractions `rho(z) = sum 1/(z - z_k)`.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::norms::{lp_power, sup_modulus, NormValue};
use super::{conjugate, m_p, recip, BoundReport};
use crate::domain::{Domain, Weight};
use crate::error::{Error, Result};
use crate::ratfun::{spf_to_rational, Side, SimplePartialFraction};

/// Euler's beta function.
pub fn beta(a: f64, b: f64) -> f64 {
    statrs::function::beta::beta(a, b)
}

/// Pole height of the single-pole SPF `1/(z - i y0)` with unit `L^p(R)` norm:
/// `y0 = (pi 2^{2-p} / ((p - 1) B(p/2, p/2)))^{1/(p-1)}`.
pub fn y0(p: f64) -> Result<f64> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(Error::BadParams(format!("y0 needs p > 1, got {p}")));
    }
    // In logs: B(p/2, p/2) underflows long before y0 stops being useful.
    let ln_beta = statrs::function::beta::ln_beta(p / 2.0, p / 2.0);
    let ln_inner = PI.ln() + (2.0 - p) * std::f64::consts::LN_2 - (p - 1.0).ln() - ln_beta;
    Ok((ln_inner / (p - 1.0)).exp())
}

/// Norm of the Hilbert transform on `L^p`: `tan(pi/2p)` for `p <= 2`,
/// `cot(pi/2p)` above.
pub fn hilbert_norm(p: f64) -> Result<f64> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(Error::BadParams(format!("h_p needs 1 < p < inf, got {p}")));
    }
    let a = FRAC_PI_2 / p;
    Ok(if p <= 2.0 { a.tan() } else { 1.0 / a.tan() })
}

fn sup_on_axis(rho: &SimplePartialFraction) -> f64 {
    sup_modulus(|z| rho.eval(z).norm(), Domain::Axis, rho.poles()).value
}

/// `d(rho; p) = 2 pi ||rho||_inf^{p-1} / ||rho||_p^p` and its ingredients.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpfD {
    pub p: f64,
    pub d: f64,
    pub sup: f64,
    /// `||rho||_p^p` and how it was computed.
    pub lp_power: NormValue,
}

impl SpfD {
    /// `D = (d / 2 pi)^{p'/p} = ||rho||_inf / ||rho||_p^{p'}`.
    pub fn normalized(&self) -> f64 {
        (self.d / (2.0 * PI)).powf(conjugate(self.p) / self.p)
    }
}

pub fn spf_d(rho: &SimplePartialFraction, p: f64) -> Result<SpfD> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(Error::BadParams(format!("d(rho; p) needs p > 1, got {p}")));
    }
    let lp = lp_power(&spf_to_rational(rho), Domain::Axis, p)?;
    let sup = sup_on_axis(rho);
    Ok(SpfD {
        p,
        d: 2.0 * PI * sup.powf(p - 1.0) / lp.value,
        sup,
        lp_power: lp,
    })
}

fn real_pole(rho: &SimplePartialFraction) -> Error {
    let z = rho
        .poles()
        .iter()
        .find(|z| z.im == 0.0)
        .copied()
        .unwrap_or_default();
    Error::PoleOnContour { re: z.re, im: z.im }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpfBounds {
    pub d: SpfD,
    /// `d <= 2 m_p`.
    pub upper: BoundReport,
    /// `cos(pi (1 - p/2)) / n <= d` for `p <= 2`, `1/n <= d` for `p >= 2`.
    pub lower: BoundReport,
}

/// Two-sided bounds on `d(rho; p)` for an SPF with all poles on one side.
pub fn spf_bounds(rho: &SimplePartialFraction, p: f64) -> Result<SpfBounds> {
    match rho.side() {
        None => return Err(real_pole(rho)),
        Some(Side::Both) => return Err(Error::PolesOnBothSides),
        Some(_) => {}
    }
    let d = spf_d(rho, p)?;
    let n = rho.degree() as f64;
    let lower = if p >= 2.0 {
        1.0 / n
    } else {
        (PI * (1.0 - p / 2.0)).cos() / n
    };
    Ok(SpfBounds {
        upper: BoundReport::new(d.d, 2.0 * m_p(p) as f64),
        lower: BoundReport::new(lower, d.d),
        d,
    })
}

/// `||rho||_q^{q'} <= 2^{q'-p'} (m_p/pi)^{p'q'(1/p-1/q)} (1+h_p)^{p'} ||rho||_p^{p'}`
/// for poles anywhere off the axis.
pub fn spf_mixed_bound(rho: &SimplePartialFraction, p: f64, q: f64) -> Result<BoundReport> {
    if !(p > 1.0 && p.is_finite() && q > p) {
        return Err(Error::BadParams(format!(
            "need 1 < p < q <= inf, got p = {p}, q = {q}"
        )));
    }
    if rho.side().is_none() {
        return Err(real_pole(rho));
    }
    let f = spf_to_rational(rho);
    let (pc, qc) = (conjugate(p), conjugate(q));
    let lhs = if q.is_infinite() {
        sup_on_axis(rho)
    } else {
        lp_power(&f, Domain::Axis, q)?.value.powf(qc / q)
    };
    let lp = lp_power(&f, Domain::Axis, p)?.value.powf(pc / p);
    let mp = m_p(p) as f64;
    let rhs = 2f64.powf(qc - pc)
        * (mp / PI).powf(pc * qc * (1.0 / p - recip(q)))
        * (1.0 + hilbert_norm(p)?).powf(pc)
        * lp;
    Ok(BoundReport::new(lhs, rhs))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SemiaxisSpfReport {
    /// `||rho||_{L^inf(R+)}`.
    pub sup: f64,
    /// `sum 1 / |z_k|`.
    pub s: f64,
    /// `||rho||^{2m}_{L^{2m}(R+; 1/sqrt x)}`.
    pub weighted_norm_power: f64,
    /// `sup^{2m-1/2} <= S^{2m-1/2}`.
    pub sup_vs_s: BoundReport,
    /// `S^{2m-1/2} <= (2 sqrt n / cos^{2m} alpha) (m/pi) ||rho||^{2m}`.
    pub s_vs_norm: BoundReport,
}

/// Bounds for an SPF whose poles lie in the beam `|arg z - pi| < alpha`.
pub fn spf_semiaxis_bound(
    rho: &SimplePartialFraction,
    alpha: f64,
    m: u32,
) -> Result<SemiaxisSpfReport> {
    if !(alpha > 0.0 && alpha < FRAC_PI_2) {
        return Err(Error::BadParams(format!(
            "alpha must lie in (0, pi/2), got {alpha}"
        )));
    }
    if m == 0 {
        return Err(Error::BadParams("m must be >= 1".into()));
    }
    if let Some(z) = rho.poles().iter().find(|z| !((-**z).arg().abs() < alpha)) {
        return Err(Error::PolesOutsideBeam { re: z.re, im: z.im });
    }
    let domain = Domain::Semiaxis {
        weight: Weight::InvSqrt,
    };
    let sup = sup_modulus(|z| rho.eval(z).norm(), domain, rho.poles()).value;
    let s: f64 = rho.poles().iter().map(|z| 1.0 / z.norm()).sum();
    let norm = lp_power(&spf_to_rational(rho), domain, 2.0 * m as f64)?.value;
    let e = 2.0 * m as f64 - 0.5;
    let n = rho.degree() as f64;
    let rhs = 2.0 * n.sqrt() / alpha.cos().powi(2 * m as i32) * (m as f64 / PI) * norm;
    Ok(SemiaxisSpfReport {
        sup,
        s,
        weighted_norm_power: norm,
        sup_vs_s: BoundReport::new(sup.powf(e), s.powf(e)),
        s_vs_norm: BoundReport::new(s.powf(e), rhs),
    })
}

/// Reference bounds on `D(rho; p)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sigma {
    /// Earlier `n`-free majorant `p sin^{-p'}(pi/p)`.
    pub sigma: f64,
    /// `(1 / 2 pi n)^{1/(p-1)}`, for `p >= 2`.
    pub sigma1: Option<f64>,
    /// `((p + 2) / 2 pi)^{1/(p-1)}`, for `p >= 2`.
    pub sigma2: Option<f64>,
}

pub fn sigma_comparison(p: f64, n: u32) -> Result<Sigma> {
    if !(p > 1.0 && p.is_finite()) || n == 0 {
        return Err(Error::BadParams(format!(
            "need p > 1 and n >= 1, got p = {p}, n = {n}"
        )));
    }
    let e = 1.0 / (p - 1.0);
    let two_pi = 2.0 * PI;
    let (sigma1, sigma2) = if p >= 2.0 {
        (
            Some((1.0 / (two_pi * n as f64)).powf(e)),
            Some(((p + 2.0) / two_pi).powf(e)),
        )
    } else {
        (None, None)
    };
    Ok(Sigma {
        sigma: p * (PI / p).sin().powf(-conjugate(p)),
        sigma1,
        sigma2,
    })
}

/// The single-pole SPF `1/(z - i y0(p))`.
pub(crate) fn rho_p(p: f64) -> Result<SimplePartialFraction> {
    SimplePartialFraction::new(vec![Complex64::new(0.0, y0(p)?)])
}
