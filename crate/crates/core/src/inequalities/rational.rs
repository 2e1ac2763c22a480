use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::norms::{lp_norm, lp_power};
use super::{BoundReport, NikolskiiParams};
use crate::blaschke::BlaschkeProduct;
use crate::domain::{Domain, Weight};
use crate::error::{Error, Result};
use crate::ratfun::{reflect_axis, reflect_circle, segment_lift, semiaxis_lift, RationalFunction};

/// The weight attached to `f` on `domain` together with the point at which
/// it is evaluated: `(B, t)` where `t` is the parameter `B` understands.
fn weight_at(
    f: &RationalFunction,
    domain: Domain,
    point: f64,
) -> Result<(BlaschkeProduct, f64, Complex64)> {
    match domain {
        Domain::Circle { radius } => {
            let b = BlaschkeProduct::circle(reflect_circle(f, radius)?)?;
            Ok((b, point, Complex64::from_polar(radius, point)))
        }
        Domain::Axis => {
            let b = BlaschkeProduct::axis(reflect_axis(f)?)?;
            Ok((b, point, Complex64::new(point, 0.0)))
        }
        Domain::Semiaxis { weight } => {
            require_inv_sqrt(weight)?;
            if !(point >= 0.0) {
                return Err(Error::OffContour(format!("{point} is not on [0, inf)")));
            }
            let b = BlaschkeProduct::axis(semiaxis_lift(f)?)?;
            Ok((b, point.sqrt(), Complex64::new(point, 0.0)))
        }
        Domain::Segment => {
            if !(-1.0..=1.0).contains(&point) {
                return Err(Error::OffContour(format!("{point} is not on [-1, 1]")));
            }
            let b = BlaschkeProduct::circle(segment_lift(f)?)?;
            Ok((b, point.acos(), Complex64::new(point, 0.0)))
        }
    }
}

fn require_inv_sqrt(weight: Weight) -> Result<()> {
    match weight {
        Weight::InvSqrt => Ok(()),
        Weight::Sqrt => Err(Error::BadParams(
            "semiaxis inequalities use the weight 1/sqrt(x)".into(),
        )),
    }
}

/// `|R(point)|^{2m} / weight <= constant * ||R||^{2m}_{2m}`.
///
/// `point` is `theta` on the circle and `x` on the other contours.
pub fn pointwise_bound(
    f: &RationalFunction,
    domain: Domain,
    m: u32,
    point: f64,
) -> Result<BoundReport> {
    if m == 0 {
        return Err(Error::BadParams("m must be >= 1".into()));
    }
    let (b, t, z) = weight_at(f, domain, point)?;
    let mu = b.mu_at(t);
    let value = f.eval(z)?.norm().powi(2 * m as i32);
    let norm = lp_power(f, domain, 2.0 * m as f64)?.value;
    let mf = m as f64;
    let (lhs, rhs) = match domain {
        Domain::Circle { radius } => (value / (mf * mu + 1.0), norm / (2.0 * PI * radius)),
        Domain::Axis | Domain::Semiaxis { .. } => (value / mu, mf / PI * norm),
        Domain::Segment => (value / (mf * mu + 1.0), norm / PI),
    };
    Ok(BoundReport::new(lhs, rhs))
}

/// `(m_p ||mu||_inf + 1) / (2 pi r)` and friends, raised to `1/p - 1/q`,
/// with `mu` taken from the actual poles of `f`.
pub fn mu_exact_constant(
    params: &NikolskiiParams,
    f: &RationalFunction,
    domain: Domain,
) -> Result<f64> {
    let mp = params.m_p as f64;
    let base = match domain {
        Domain::Circle { radius } => {
            let b = BlaschkeProduct::circle(reflect_circle(f, radius)?)?;
            (mp * b.mu_sup().value + 1.0) / (2.0 * PI * radius)
        }
        Domain::Axis => mp * BlaschkeProduct::axis(reflect_axis(f)?)?.mu_sup().value / PI,
        Domain::Semiaxis { weight } => {
            require_inv_sqrt(weight)?;
            mp * BlaschkeProduct::axis(semiaxis_lift(f)?)?.mu_sup().value / PI
        }
        Domain::Segment => {
            let b = BlaschkeProduct::circle(segment_lift(f)?)?;
            (mp * b.mu_sup().value + 1.0) / PI
        }
    };
    Ok(base.powf(params.exponent()))
}

/// Pole-free region (or function class) behind a closed-form constant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Geometry {
    /// Circle `|z| = radius`, no poles in `delta r < |z| < r / delta`.
    Annulus { radius: f64, delta: f64 },
    /// Axis, no poles in `|Im z| <= delta`.
    Stripe { delta: f64 },
    /// Semiaxis, poles outside `x = y^2 / (4 delta^2) - delta^2`.
    Parabola { delta: f64 },
    /// Segment, poles outside the ellipse with parameter `delta > 1`.
    Ellipse { delta: f64 },
    /// Algebraic polynomials on the segment.
    SegmentPolynomial,
    /// `sum_{-n1}^{n2} c_k z^k` on `|z| = radius`; `n` is `l = n1 + n2`.
    LaurentPolynomial { radius: f64 },
    /// Trigonometric polynomials `T_{n+1,n}` on `[0, 2 pi]`.
    TrigStar,
}

/// Closed-form constant for functions of degree `n` in the given class.
pub fn geometric_constant(params: &NikolskiiParams, geometry: Geometry, n: u32) -> Result<f64> {
    let mp = params.m_p as f64;
    let n = n as f64;
    let positive = |name: &str, v: f64| {
        if v > 0.0 && v.is_finite() {
            Ok(())
        } else {
            Err(Error::BadGeometry(format!("{name} = {v} must be positive")))
        }
    };
    let base = match geometry {
        Geometry::Annulus { radius, delta } => {
            positive("radius", radius)?;
            if !(delta > 0.0 && delta < 1.0) {
                return Err(Error::BadGeometry(format!(
                    "annulus needs delta in (0, 1), got {delta}"
                )));
            }
            (mp * n * (1.0 + delta) / (1.0 - delta) + 1.0) / (2.0 * PI * radius)
        }
        Geometry::Stripe { delta } => {
            positive("delta", delta)?;
            mp * n / (PI * delta)
        }
        Geometry::Parabola { delta } => {
            positive("delta", delta)?;
            2.0 * mp * n / (PI * delta)
        }
        Geometry::Ellipse { delta } => {
            if !(delta > 1.0 && delta.is_finite()) {
                return Err(Error::BadGeometry(format!(
                    "ellipse needs delta > 1, got {delta}"
                )));
            }
            (2.0 * mp * n * (delta + 1.0) / (delta - 1.0) + 1.0) / PI
        }
        Geometry::SegmentPolynomial => (2.0 * mp * n + 1.0) / PI,
        Geometry::LaurentPolynomial { radius } => {
            positive("radius", radius)?;
            (mp * n + 1.0) / (2.0 * PI * radius)
        }
        Geometry::TrigStar => (2.0 * mp * n + mp + 1.0) / (2.0 * PI),
    };
    Ok(base.powf(params.exponent()))
}

/// The competing annulus constant
/// `((m_p n + 1) / (2 pi r))^e ((1 + delta) / (1 - delta))^e`.
pub fn baranov_constant(params: &NikolskiiParams, radius: f64, n: u32, delta: f64) -> Result<f64> {
    if !(delta > 0.0 && delta < 1.0) || !(radius > 0.0) {
        return Err(Error::BadGeometry(format!(
            "radius {radius}, delta {delta}"
        )));
    }
    let e = params.exponent();
    let mp = params.m_p as f64;
    Ok(((mp * n as f64 + 1.0) / (2.0 * PI * radius)).powf(e)
        * ((1.0 + delta) / (1.0 - delta)).powf(e))
}

/// `||f||_q <= constant * ||f||_p`.
pub fn nikolskii_check(
    f: &RationalFunction,
    domain: Domain,
    params: &NikolskiiParams,
    constant: f64,
) -> Result<BoundReport> {
    let lhs = lp_norm(f, domain, params.q)?.value;
    let rhs = constant * lp_norm(f, domain, params.p)?.value;
    Ok(BoundReport::new(lhs, rhs))
}

/// Both branches of `|R|^d < w` or `|R|^{2m-d} <= K ||R||^{2m}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Alternative {
    pub modulus: f64,
    /// `(m mu + 1) / (2 pi r)` on the circle, `mu_*` on the axis.
    pub threshold: f64,
    /// `||R||^{2m}` on the circle, `(m / pi) ||R||^{2m}` on the axis.
    pub norm_term: f64,
    pub first: bool,
    pub second: bool,
}

impl Alternative {
    pub fn holds(&self) -> bool {
        self.first || self.second
    }
}

/// Evaluates the alternative at `point` (`theta` or `x`) for any real `d`.
pub fn alternative_check(
    f: &RationalFunction,
    domain: Domain,
    m: u32,
    d: f64,
    point: f64,
) -> Result<Alternative> {
    if m == 0 {
        return Err(Error::BadParams("m must be >= 1".into()));
    }
    let (b, t, z) = match domain {
        Domain::Circle { .. } | Domain::Axis => weight_at(f, domain, point)?,
        _ => {
            return Err(Error::BadParams(
                "the alternative is stated on the circle and the axis".into(),
            ))
        }
    };
    let mu = b.mu_at(t);
    let modulus = f.eval(z)?.norm();
    let norm = lp_power(f, domain, 2.0 * m as f64)?.value;
    let mf = m as f64;
    let (threshold, norm_term) = match domain {
        Domain::Circle { radius } => ((mf * mu + 1.0) / (2.0 * PI * radius), norm),
        _ => (mu, mf / PI * norm),
    };
    let second = BoundReport::new(modulus.powf(2.0 * mf - d), norm_term).holds;
    Ok(Alternative {
        modulus,
        threshold,
        norm_term,
        first: modulus.powf(d) < threshold,
        second,
    })
}
