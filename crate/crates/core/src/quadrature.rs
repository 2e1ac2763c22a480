//! Exact quadrature identities with variable nodes.
//!
//! | domain   | nodes       | integral `int R^m`                  | norm `int |R|^{2m}`                 |
//! |----------|-------------|-------------------------------------|-------------------------------------|
//! | circle   | `mn + 1`    | `2 pi r sum R^m / (m mu + 1)`       | `2 pi r sum |R|^{2m} / (m mu + 1)`  |
//! | axis     | `mn`        | `(pi/m) sum R^m / mu`               | `(pi/m) sum |R|^{2m} / mu`          |
//! | semiaxis | `2mn`       | `(pi/m) sum w R^m(u^2) / mu`        | `(pi/m) sum w |R(u^2)|^{2m} / mu`   |
//! | segment  | `2mn + 1`   | `pi sum R^m(x) / (m mu + 1)`        | `pi sum |R(x)|^{2m} / (m mu + 1)`   |
//!
//! On the semiaxis `w = 1` for the weight `1/sqrt(x)` and `w = u^2` for
//! `sqrt(x)`; the segment integrals carry the Chebyshev weight.
//!
//! The infinite axis node (`phi = 0`) is evaluated as a limit: with
//! `F` the integrand and `S = sum n_k Im z_k`, `F / mu -> lim x^2 F / S`.
//! The limit vanishes unless `F` decays exactly like `x^{-2}`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::blaschke::BlaschkeProduct;
use crate::domain::{Domain, Weight};
use crate::error::{Error, Result};
use crate::notches::{self, NotchSet};
use crate::oracle;
use crate::ratfun::{
    reflect_axis, reflect_circle, segment_lift, semiaxis_lift, ComplexPoint, RationalFunction,
};

/// Integral of `R^m` or the `2m`-th power of the norm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Integral,
    Norm,
}

/// Oracle cross-check attached by [`QuadratureResult::verify`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleCheck {
    pub value: Complex64,
    pub error_estimate: f64,
    pub discrepancy: f64,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureResult {
    pub mode: Mode,
    pub value: Complex64,
    pub contributions: Vec<Complex64>,
    /// An infinite axis node is present.
    pub infinite_node: bool,
    /// The infinite node was present and its limit contribution is zero.
    pub dropped_inf: bool,
    pub notches: NotchSet,
    pub oracle: Option<OracleCheck>,
}

impl QuadratureResult {
    pub fn domain(&self) -> Domain {
        self.notches.domain
    }

    pub fn m(&self) -> u32 {
        self.notches.m
    }

    pub fn phi(&self) -> f64 {
        self.notches.phi
    }

    /// Sum of the moduli of the contributions; the scale against which
    /// rounding in `value` should be judged.
    pub fn magnitude(&self) -> f64 {
        self.contributions.iter().map(|c| c.norm()).sum()
    }

    /// Recomputes the integral with the adaptive oracle and records it.
    pub fn verify(&mut self, f: &RationalFunction, tol: f64) -> Result<OracleCheck> {
        let check = oracle_value(f, self.domain(), self.m(), self.mode, tol)?;
        let check = OracleCheck {
            discrepancy: (self.value - check.value).norm(),
            ..check
        };
        self.oracle = Some(check);
        Ok(check)
    }
}

/// The integral computed independently by adaptive quadrature.
pub fn oracle_value(
    f: &RationalFunction,
    domain: Domain,
    m: u32,
    mode: Mode,
    tol: f64,
) -> Result<OracleCheck> {
    let integrand = |z: Complex64| -> Complex64 {
        match f.eval(z) {
            Ok(v) => match mode {
                Mode::Integral => v.powu(m),
                Mode::Norm => Complex64::new(v.norm_sqr().powi(m as i32), 0.0),
            },
            Err(_) => Complex64::new(f64::NAN, f64::NAN),
        }
    };
    let poles: Vec<Complex64> = f.poles().iter().map(|p| p.location).collect();
    let est = oracle::integrate_near(integrand, domain, &poles, tol);
    if !est.value.is_finite() {
        return Err(Error::NoConvergence(
            "integrand is not finite on the contour".into(),
        ));
    }
    Ok(OracleCheck {
        value: est.value,
        error_estimate: est.error_estimate,
        discrepancy: 0.0,
        converged: est.converged,
    })
}

/// Neumaier-compensated sum of complex terms, in order.
pub fn compensated_sum(terms: &[Complex64]) -> Complex64 {
    fn sum(xs: impl Iterator<Item = f64>) -> f64 {
        let mut s = 0.0f64;
        let mut c = 0.0f64;
        for x in xs {
            let t = s + x;
            if s.abs() >= x.abs() {
                c += (s - t) + x;
            } else {
                c += (x - t) + s;
            }
            s = t;
        }
        s + c
    }
    Complex64::new(
        sum(terms.iter().map(|z| z.re)),
        sum(terms.iter().map(|z| z.im)),
    )
}

fn check_m(m: u32) -> Result<()> {
    if m == 0 {
        Err(Error::InvalidInput("m must be >= 1".into()))
    } else {
        Ok(())
    }
}

fn power(f: &RationalFunction, z: Complex64, m: u32, mode: Mode) -> Result<Complex64> {
    let v = f.eval(z)?;
    Ok(match mode {
        Mode::Integral => v.powu(m),
        Mode::Norm => Complex64::new(v.norm_sqr().powi(m as i32), 0.0),
    })
}

fn finish(
    mode: Mode,
    contributions: Vec<Complex64>,
    notches: NotchSet,
    infinite_zero: bool,
) -> QuadratureResult {
    let infinite_node = notches.has_infinite_node();
    QuadratureResult {
        mode,
        value: compensated_sum(&contributions),
        contributions,
        infinite_node,
        dropped_inf: infinite_node && infinite_zero,
        notches,
        oracle: None,
    }
}

fn circle_rule(
    f: &RationalFunction,
    r: f64,
    m: u32,
    phi: f64,
    mode: Mode,
) -> Result<QuadratureResult> {
    check_m(m)?;
    let poles = reflect_circle(f, r)?;
    let set = notches::notches_circle(&poles, m, phi)?;
    let scale = TAU * r;
    let contributions = set
        .notches
        .iter()
        .map(|n| {
            let z = n.point.finite().expect("circle nodes are finite");
            let mu = n.mu.expect("circle nodes carry mu");
            Ok(power(f, z, m, mode)? * (scale / (m as f64 * mu + 1.0)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(finish(mode, contributions, set, true))
}

/// `int_{|z|=r} R^m |dz|` over the `m n + 1` notches.
pub fn integrate_circle(
    f: &RationalFunction,
    r: f64,
    m: u32,
    phi: f64,
) -> Result<QuadratureResult> {
    circle_rule(f, r, m, phi, Mode::Integral)
}

/// `||R||^{2m}_{L^{2m}(|z|=r)}`.
pub fn norm_circle_2m(f: &RationalFunction, r: f64, m: u32, phi: f64) -> Result<QuadratureResult> {
    circle_rule(f, r, m, phi, Mode::Norm)
}

/// Shared axis-type sum. `term(x)` is the integrand at a finite node and
/// `tail` is `lim x^2 F(x)`.
fn axis_sum(
    b: &BlaschkeProduct,
    set: NotchSet,
    m: u32,
    mode: Mode,
    term: impl Fn(f64) -> Result<Complex64>,
    tail: Complex64,
) -> Result<QuadratureResult> {
    let scale = PI / m as f64;
    let contributions = set
        .notches
        .iter()
        .map(|n| match n.point {
            ComplexPoint::Finite(z) => {
                Ok(term(z.re)? * (scale / n.mu.expect("finite nodes carry mu")))
            }
            ComplexPoint::Infinity => Ok(tail * (scale / b.mu_tail())),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(finish(
        mode,
        contributions,
        set,
        tail == Complex64::new(0.0, 0.0),
    ))
}

fn axis_rule(f: &RationalFunction, m: u32, phi: f64, mode: Mode) -> Result<QuadratureResult> {
    check_m(m)?;
    let poles = reflect_axis(f)?;
    let gap = f.decay_order() as u32;
    // x^2 R^m -> lead^m when m * gap = 2; |R|^{2m} likewise with 2 m gap = 2.
    let decay = match mode {
        Mode::Integral => m * gap,
        Mode::Norm => 2 * m * gap,
    };
    if decay < 2 {
        return Err(Error::DivergentIntegral(format!(
            "int R^{m} over the real axis needs decay of order >= 2, R decays like x^-{gap}"
        )));
    }
    let tail = if decay == 2 {
        power_of_lead(f, m, mode)
    } else {
        Complex64::new(0.0, 0.0)
    };
    let b = BlaschkeProduct::axis(poles.clone())?;
    let set = notches::notches_axis(&poles, m, phi)?;
    axis_sum(
        &b,
        set,
        m,
        mode,
        |x| power(f, Complex64::new(x, 0.0), m, mode),
        tail,
    )
}

fn power_of_lead(f: &RationalFunction, m: u32, mode: Mode) -> Complex64 {
    let lead = f.leading_coefficient();
    match mode {
        Mode::Integral => lead.powu(m),
        Mode::Norm => Complex64::new(lead.norm_sqr().powi(m as i32), 0.0),
    }
}

/// `int_R R^m dx` over the `m n` notches of `B^m = e^{i phi}`.
pub fn integrate_axis(f: &RationalFunction, m: u32, phi: f64) -> Result<QuadratureResult> {
    axis_rule(f, m, phi, Mode::Integral)
}

/// `||R||^{2m}_{L^{2m}(R)}`.
pub fn norm_axis_2m(f: &RationalFunction, m: u32, phi: f64) -> Result<QuadratureResult> {
    axis_rule(f, m, phi, Mode::Norm)
}

fn semiaxis_rule(
    f: &RationalFunction,
    m: u32,
    phi: f64,
    weight: Weight,
    mode: Mode,
) -> Result<QuadratureResult> {
    check_m(m)?;
    let poles = semiaxis_lift(f)?;
    let gap = f.decay_order() as u32;
    // In u = sqrt(x) the integrand decays like u^{-(2 k gap - extra)}.
    let k = match mode {
        Mode::Integral => m,
        Mode::Norm => 2 * m,
    };
    let extra = match weight {
        Weight::InvSqrt => 0,
        Weight::Sqrt => 2,
    };
    let decay = 2 * k * gap;
    if decay < 2 + extra {
        return Err(Error::DivergentIntegral(format!(
            "int R^{m} sqrt(x) over the semiaxis needs R to decay like x^-2, got x^-{gap}"
        )));
    }
    let tail = if decay == 2 + extra {
        power_of_lead(f, m, mode)
    } else {
        Complex64::new(0.0, 0.0)
    };
    let b = BlaschkeProduct::axis(poles.clone())?;
    let set = notches::notches_semiaxis(&poles, m, phi, weight)?;
    axis_sum(
        &b,
        set,
        m,
        mode,
        |u| {
            let x = u * u;
            let w = match weight {
                Weight::InvSqrt => 1.0,
                Weight::Sqrt => x,
            };
            Ok(power(f, Complex64::new(x, 0.0), m, mode)? * w)
        },
        tail,
    )
}

/// `int_0^inf R^m(x) w(x) dx` over the `2 m n` notches of the lifted set.
pub fn integrate_semiaxis(
    f: &RationalFunction,
    m: u32,
    phi: f64,
    weight: Weight,
) -> Result<QuadratureResult> {
    semiaxis_rule(f, m, phi, weight, Mode::Integral)
}

/// `int_0^inf |R(x)|^{2m} w(x) dx`.
pub fn norm_semiaxis_2m(
    f: &RationalFunction,
    m: u32,
    phi: f64,
    weight: Weight,
) -> Result<QuadratureResult> {
    semiaxis_rule(f, m, phi, weight, Mode::Norm)
}

fn segment_rule(f: &RationalFunction, m: u32, phi: f64, mode: Mode) -> Result<QuadratureResult> {
    check_m(m)?;
    let poles = segment_lift(f)?;
    let set = notches::notches_segment(&poles, m, phi)?;
    let contributions = set
        .notches
        .iter()
        .map(|n| {
            let x = n.point.finite().expect("segment nodes are finite").re;
            let mu = n.mu.expect("segment nodes carry mu");
            Ok(power(f, Complex64::new(x, 0.0), m, mode)? * (PI / (m as f64 * mu + 1.0)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(finish(mode, contributions, set, true))
}

/// `int_{-1}^{1} R^m(x) dx / sqrt(1 - x^2)` over `2 m n + 1` notches.
pub fn integrate_segment(f: &RationalFunction, m: u32, phi: f64) -> Result<QuadratureResult> {
    segment_rule(f, m, phi, Mode::Integral)
}

/// `||R||^{2m}_{L^{2m}([-1,1]; w)}` with the Chebyshev weight.
pub fn norm_segment_2m(f: &RationalFunction, m: u32, phi: f64) -> Result<QuadratureResult> {
    segment_rule(f, m, phi, Mode::Norm)
}

/// Dispatches on the domain.
pub fn quadrature(
    f: &RationalFunction,
    domain: Domain,
    m: u32,
    phi: f64,
    mode: Mode,
) -> Result<QuadratureResult> {
    match domain {
        Domain::Circle { radius } => circle_rule(f, radius, m, phi, mode),
        Domain::Axis => axis_rule(f, m, phi, mode),
        Domain::Semiaxis { weight } => semiaxis_rule(f, m, phi, weight, mode),
        Domain::Segment => segment_rule(f, m, phi, mode),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfun::Pole;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn single(z: Complex64) -> RationalFunction {
        RationalFunction::from_poles(c(1.0, 0.0), vec![Pole::new(z, 1)]).unwrap()
    }

    fn close(a: Complex64, b: Complex64, eps: f64) {
        assert!((a - b).norm() <= eps * (1.0 + b.norm()), "{a} vs {b}");
    }

    #[test]
    fn circle_examples() {
        let f = single(c(2.0, 0.0));
        for phi in [0.0, 0.3, 2.9] {
            close(
                integrate_circle(&f, 1.0, 1, phi).unwrap().value,
                c(-PI, 0.0),
                1e-12,
            );
        }
        // |d zeta| = d zeta / (i zeta) on the unit circle, so the residues of
        // 1/(zeta (zeta - 1/2)) at 0 and 1/2 cancel.
        assert!(
            integrate_circle(&single(c(0.5, 0.0)), 1.0, 1, 1.0)
                .unwrap()
                .value
                .norm()
                < 1e-12
        );
        close(
            norm_circle_2m(&single(c(0.5, 0.0)), 1.0, 1, 0.2)
                .unwrap()
                .value,
            c(8.0 * PI / 3.0, 0.0),
            1e-12,
        );
        close(
            norm_circle_2m(&f, 1.0, 1, 0.2).unwrap().value,
            c(TAU / 3.0, 0.0),
            1e-12,
        );
        // int |e^{it} - 1/2|^{-4} dt = 2 pi (1 + a^2) / (1 - a^2)^3 with a = 1/2.
        let want = TAU * 1.25 / 0.75f64.powi(3);
        close(
            norm_circle_2m(&single(c(0.5, 0.0)), 1.0, 2, 0.7)
                .unwrap()
                .value,
            c(want, 0.0),
            1e-12,
        );
    }

    #[test]
    fn axis_examples() {
        let lorentz = RationalFunction::from_poles(
            c(1.0, 0.0),
            vec![Pole::new(c(0.0, 1.0), 1), Pole::new(c(0.0, -1.0), 1)],
        )
        .unwrap();
        close(
            integrate_axis(&lorentz, 1, PI).unwrap().value,
            c(PI, 0.0),
            1e-13,
        );
        close(
            integrate_axis(&lorentz, 1, 0.0).unwrap().value,
            c(PI, 0.0),
            1e-13,
        );

        let f = single(c(0.0, 1.0));
        let q = integrate_axis(&f, 2, 1.0).unwrap();
        assert!(q.value.norm() < 1e-12, "{}", q.value);

        for phi in [0.4, 1.0, PI, 5.0] {
            close(norm_axis_2m(&f, 1, phi).unwrap().value, c(PI, 0.0), 1e-13);
            close(
                norm_axis_2m(&f, 2, phi).unwrap().value,
                c(PI / 2.0, 0.0),
                1e-13,
            );
        }
        assert!(matches!(
            integrate_axis(&f, 1, 1.0),
            Err(Error::DivergentIntegral(_))
        ));

        let two = RationalFunction::from_poles(
            c(1.0, 0.0),
            vec![Pole::new(c(0.0, 1.0), 1), Pole::new(c(0.0, 2.0), 1)],
        )
        .unwrap();
        assert!(integrate_axis(&two, 1, 0.5).unwrap().value.norm() < 1e-12);
    }

    #[test]
    fn infinite_node_limit() {
        // m = 1, degree gap 1: the only node is at infinity and carries
        // the whole integral.
        let f = single(c(0.0, 1.0));
        let q = norm_axis_2m(&f, 1, 0.0).unwrap();
        assert!(q.infinite_node);
        assert!(!q.dropped_inf);
        close(q.value, c(PI, 0.0), 1e-14);
        // Faster decay: the limit vanishes and the node is dropped.
        let q = norm_axis_2m(&f, 2, 0.0).unwrap();
        assert!(q.infinite_node && q.dropped_inf);
        close(q.value, c(PI / 2.0, 0.0), 1e-13);
    }

    #[test]
    fn semiaxis_examples() {
        let f = single(c(-1.0, 0.0));
        let inv = Weight::InvSqrt;
        close(
            integrate_semiaxis(&f, 1, 0.3, inv).unwrap().value,
            c(PI, 0.0),
            1e-13,
        );
        close(
            norm_semiaxis_2m(&f, 1, 0.3, inv).unwrap().value,
            c(PI / 2.0, 0.0),
            1e-13,
        );
        let sq =
            RationalFunction::from_poles(c(1.0, 0.0), vec![Pole::new(c(-1.0, 0.0), 2)]).unwrap();
        close(
            integrate_semiaxis(&sq, 1, 0.3, Weight::Sqrt).unwrap().value,
            c(PI / 2.0, 0.0),
            1e-13,
        );
        assert!(matches!(
            integrate_semiaxis(&f, 1, 0.3, Weight::Sqrt),
            Err(Error::DivergentIntegral(_))
        ));
    }

    #[test]
    fn segment_examples() {
        let p = RationalFunction::polynomial(vec![c(1.0, 0.0), c(2.0, 0.0)]).unwrap();
        for phi in [0.0, 0.7, 2.0] {
            close(
                norm_segment_2m(&p, 1, phi).unwrap().value,
                c(3.0 * PI, 0.0),
                1e-13,
            );
        }
        let q = norm_segment_2m(&p, 1, 0.0).unwrap();
        let nonzero = q.contributions.iter().filter(|c| c.norm() > 1e-12).count();
        assert_eq!(nonzero, 1);
        let f = single(c(2.0, 0.0));
        close(
            integrate_segment(&f, 1, 0.4).unwrap().value,
            c(-PI / 3f64.sqrt(), 0.0),
            1e-13,
        );
    }

    #[test]
    fn degree_zero_is_rejected() {
        let one = RationalFunction::polynomial(vec![c(1.0, 0.0)]).unwrap();
        assert_eq!(
            integrate_circle(&one, 1.0, 1, 0.0).unwrap_err(),
            Error::PoleSetEmpty
        );
        assert_eq!(
            integrate_segment(&one, 1, 0.0).unwrap_err(),
            Error::PoleSetEmpty
        );
    }

    #[test]
    fn verify_attaches_oracle() {
        let f = single(c(0.0, 1.0));
        let mut q = norm_axis_2m(&f, 1, 1.0).unwrap();
        let check = q.verify(&f, 1e-10).unwrap();
        assert!(check.converged);
        assert!(check.discrepancy < 1e-9);
    }
}
