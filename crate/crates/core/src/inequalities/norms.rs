use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::domain::{Domain, Weight};
use crate::error::{Error, Result};
use crate::extremum::{maximize, Maximum, Scan};
use crate::oracle;
use crate::quadrature::{quadrature, Mode};
use crate::ratfun::RationalFunction;
use crate::tol;

/// Parameter used whenever a norm is computed by the quadrature engine.
/// Any value works; this one keeps the axis nodes finite.
pub const NORM_PHI: f64 = 0.5;

/// How a norm was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormPath {
    /// Exact quadrature over the notches (`p = 2m`).
    Quadrature,
    /// Adaptive Gauss-Kronrod.
    Oracle,
    /// Sampling plus golden-section refinement (`p = inf`).
    Maximization,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormValue {
    pub value: f64,
    pub path: NormPath,
}

/// `sup |g|` over a contour. `hints` (typically pole locations) seed the
/// sample grid. The returned `arg` is `theta` on the circle and `x` elsewhere.
pub fn sup_modulus(g: impl Fn(Complex64) -> f64, domain: Domain, hints: &[Complex64]) -> Maximum {
    let samples = (64 * hints.len()).max(512);
    fn scan(lo: f64, hi: f64, periodic: bool, seeds: &[f64], samples: usize) -> Scan<'_> {
        Scan {
            lo,
            hi,
            samples,
            seeds,
            periodic,
            xtol: 1e-12,
        }
    }
    match domain {
        Domain::Circle { radius } => {
            let seeds: Vec<f64> = hints.iter().map(|h| h.arg()).collect();
            maximize(
                |t| g(Complex64::from_polar(radius, t)),
                &scan(0.0, TAU, true, &seeds, samples),
            )
        }
        Domain::Axis => {
            let seeds: Vec<f64> = hints.iter().map(|h| h.re.atan()).collect();
            let m = maximize(
                |t| g(Complex64::new(t.tan(), 0.0)),
                &scan(-FRAC_PI_2, FRAC_PI_2, false, &seeds, samples),
            );
            Maximum {
                arg: m.arg.tan(),
                value: m.value,
            }
        }
        Domain::Semiaxis { .. } => {
            let seeds: Vec<f64> = hints.iter().map(|h| h.re.max(0.0).sqrt().atan()).collect();
            let m = maximize(
                |t| g(Complex64::new(t.tan().powi(2), 0.0)),
                &scan(0.0, FRAC_PI_2, false, &seeds, samples),
            );
            Maximum {
                arg: m.arg.tan().powi(2),
                value: m.value,
            }
        }
        Domain::Segment => {
            let seeds: Vec<f64> = hints.iter().map(|h| h.re.clamp(-1.0, 1.0).acos()).collect();
            let m = maximize(
                |t| g(Complex64::new(t.cos(), 0.0)),
                &scan(0.0, PI, false, &seeds, samples),
            );
            Maximum {
                arg: m.arg.cos(),
                value: m.value,
            }
        }
    }
}

fn even_order(p: f64) -> Option<u32> {
    (p.fract() == 0.0 && (2.0..=64.0).contains(&p) && (p as u32).is_multiple_of(2))
        .then_some(p as u32 / 2)
}

/// `int |f|^p` over the contour (with the domain's weight). Even integer `p`
/// goes through the notch quadrature, everything else through the oracle.
pub fn lp_power(f: &RationalFunction, domain: Domain, p: f64) -> Result<NormValue> {
    if !(p > 0.0 && p.is_finite()) {
        return Err(Error::BadParams(format!(
            "L^p power needs finite p > 0, got {p}"
        )));
    }
    if let Some(m) = even_order(p) {
        let q = quadrature(f, domain, m, NORM_PHI, Mode::Norm)?;
        return Ok(NormValue {
            value: q.value.re,
            path: NormPath::Quadrature,
        });
    }
    let gap = f.decay_order() as f64;
    let poles: Vec<Complex64> = f.poles().iter().map(|p| p.location).collect();
    let modulus = |z: Complex64| match f.eval(z) {
        Ok(v) => Complex64::new(v.norm().powf(p), 0.0),
        Err(_) => Complex64::new(f64::NAN, 0.0),
    };
    let divergent = |need: &str| {
        Error::DivergentIntegral(format!(
            "|R|^{p} decays like x^-{} on {}; {need}",
            p * gap,
            domain.name()
        ))
    };
    let est = match domain {
        Domain::Axis => {
            let s = p * gap;
            if s <= 1.0 {
                return Err(divergent("need > 1"));
            }
            oracle::integrate_axis_decaying(
                |x| modulus(Complex64::new(x, 0.0)),
                s,
                &poles,
                tol::ORACLE,
            )
        }
        Domain::Semiaxis { weight } => {
            let need = match weight {
                Weight::InvSqrt => 0.5,
                Weight::Sqrt => 1.5,
            };
            if p * gap <= need {
                return Err(divergent(&format!("need > {need}")));
            }
            oracle::integrate_near(modulus, domain, &poles, tol::ORACLE)
        }
        Domain::Circle { .. } | Domain::Segment => {
            oracle::integrate_near(modulus, domain, &poles, tol::ORACLE)
        }
    };
    Ok(NormValue {
        value: est.checked()?.re,
        path: NormPath::Oracle,
    })
}

/// `||f||_p`; `p = inf` is the supremum over the contour.
pub fn lp_norm(f: &RationalFunction, domain: Domain, p: f64) -> Result<NormValue> {
    if p.is_infinite() && p > 0.0 {
        let hints: Vec<Complex64> = f.poles().iter().map(|q| q.location).collect();
        let max = sup_modulus(|z| f.eval(z).map_or(f64::NAN, |v| v.norm()), domain, &hints);
        return Ok(NormValue {
            value: max.value,
            path: NormPath::Maximization,
        });
    }
    let power = lp_power(f, domain, p)?;
    Ok(NormValue {
        value: power.value.powf(1.0 / p),
        path: power.path,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfun::Pole;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn paths_agree_on_even_p() {
        let f = RationalFunction::new(
            vec![c(1.0, 0.5)],
            vec![Pole::new(c(0.3, 1.2), 1), Pole::new(c(-1.0, -0.7), 1)],
        )
        .unwrap();
        let quad = lp_power(&f, Domain::Axis, 4.0).unwrap();
        assert_eq!(quad.path, NormPath::Quadrature);
        let orc = lp_power(&f, Domain::Axis, 4.0 + 1e-12).unwrap();
        assert_eq!(orc.path, NormPath::Oracle);
        assert!((quad.value - orc.value).abs() < 1e-8 * quad.value);
    }

    #[test]
    fn lorentzian_norms() {
        let f = RationalFunction::from_poles(c(1.0, 0.0), vec![Pole::new(c(0.0, 1.0), 1)]).unwrap();
        // int (1 + x^2)^{-3/2} dx = 2
        let v = lp_power(&f, Domain::Axis, 3.0).unwrap();
        assert!((v.value - 2.0).abs() < 1e-9);
        let sup = lp_norm(&f, Domain::Axis, f64::INFINITY).unwrap();
        assert!((sup.value - 1.0).abs() < 1e-14);
        assert!(lp_power(&f, Domain::Axis, 1.0).is_err());
    }

    #[test]
    fn sup_on_each_contour() {
        let f =
            RationalFunction::from_poles(c(1.0, 0.0), vec![Pole::new(c(-2.0, 0.0), 1)]).unwrap();
        let hints = [c(-2.0, 0.0)];
        let g = |z: Complex64| f.eval(z).unwrap().norm();
        let circle = sup_modulus(g, Domain::Circle { radius: 1.0 }, &hints);
        assert!((circle.value - 1.0).abs() < 1e-14);
        assert!((circle.arg - PI).abs() < 1e-6);
        let seg = sup_modulus(g, Domain::Segment, &hints);
        assert!((seg.value - 1.0).abs() < 1e-14 && (seg.arg + 1.0).abs() < 1e-12);
        let semi = sup_modulus(
            g,
            Domain::Semiaxis {
                weight: Weight::InvSqrt,
            },
            &hints,
        );
        assert!((semi.value - 0.5).abs() < 1e-14 && semi.arg.abs() < 1e-12);
    }
}
