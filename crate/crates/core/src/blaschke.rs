//! Blaschke products and their weight functions `mu` on the circle `|z| = r`
//! and on the real axis.
//!
//! On the circle
//! `B(z) = prod (r (z - z_k) / (r^2 - z conj(z_k)))^{n_k}` and
//! `mu(z) = sum n_k (r^2 - |z_k|^2) / |z - z_k|^2`;
//! on the axis
//! `B(x) = prod ((x - z_k) / (x - conj(z_k)))^{n_k}` and
//! `mu(x) = sum n_k Im z_k / |x - conj(z_k)|^2`.
//!
//! The semiaxis weight is the axis weight of a lifted pole set and the segment
//! weight is the circle weight with `r = 1`, so these two rules need no
//! separate code.
//!
//! Both phases have closed, globally continuous forms. On the circle each
//! factor contributes `theta + 2 Arg(1 - (z_k / r) e^{-i theta})`, where the
//! principal branch never crosses its cut because `|z_k| < r`. On the axis each
//! factor contributes `2 atan2(-Im z_k, x - Re z_k)`, which stays in
//! `(-2 pi, 0)`.

use std::f64::consts::{FRAC_PI_2, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::extremum::{maximize, Maximum, Scan};
use crate::ratfun::{PoleSet, Region};
use crate::tol;

/// Contour carrying a Blaschke product.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Contour {
    Circle { radius: f64 },
    Axis,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BlaschkeProduct {
    poles: PoleSet,
    contour: Contour,
}

impl BlaschkeProduct {
    /// Circle product; the pole set must be tagged `Disc(r)`.
    pub fn circle(poles: PoleSet) -> Result<Self> {
        match poles.region() {
            Region::Disc { radius } => Ok(Self {
                poles,
                contour: Contour::Circle { radius },
            }),
            other => Err(Error::InvalidInput(format!(
                "circle Blaschke product needs a disc pole set, got {other:?}"
            ))),
        }
    }

    /// Axis product; the pole set must lie in the upper half-plane.
    pub fn axis(poles: PoleSet) -> Result<Self> {
        match poles.region() {
            Region::UpperHalfPlane => Ok(Self {
                poles,
                contour: Contour::Axis,
            }),
            other => Err(Error::InvalidInput(format!(
                "axis Blaschke product needs an upper half-plane pole set, got {other:?}"
            ))),
        }
    }

    pub fn poles(&self) -> &PoleSet {
        &self.poles
    }

    pub fn contour(&self) -> Contour {
        self.contour
    }

    pub fn total(&self) -> u32 {
        self.poles.total()
    }

    /// Contour point for parameter `t` (`theta` on the circle, `x` on the axis).
    pub fn point(&self, t: f64) -> Complex64 {
        match self.contour {
            Contour::Circle { radius } => Complex64::from_polar(radius, t),
            Contour::Axis => Complex64::new(t, 0.0),
        }
    }

    /// `B(z)^m`, each factor raised to `m n_k` separately.
    pub fn eval(&self, z: Complex64, m: u32) -> Result<Complex64> {
        let mut out = Complex64::new(1.0, 0.0);
        for p in self.poles.entries() {
            let a = p.location;
            let (num, den) = match self.contour {
                Contour::Circle { radius } => (radius * (z - a), radius * radius - z * a.conj()),
                Contour::Axis => (z - a, z - a.conj()),
            };
            if den.norm() <= tol::POLE_EVAL * a.norm().max(1.0) {
                return Err(Error::EvalAtPole { re: z.re, im: z.im });
            }
            out *= (num / den).powu(m * p.multiplicity);
        }
        Ok(out)
    }

    /// `B'(z) / B(z)`.
    pub fn log_derivative(&self, z: Complex64) -> Complex64 {
        self.poles
            .entries()
            .iter()
            .map(|p| {
                let a = p.location;
                let n = p.multiplicity as f64;
                match self.contour {
                    Contour::Circle { radius } => {
                        n * (1.0 / (z - a) + a.conj() / (radius * radius - z * a.conj()))
                    }
                    Contour::Axis => n * (1.0 / (z - a) - 1.0 / (z - a.conj())),
                }
            })
            .sum()
    }

    /// `mu` at a point that must lie on the contour.
    pub fn mu(&self, z: Complex64) -> Result<f64> {
        match self.contour {
            Contour::Circle { radius } => {
                if (z.norm() - radius).abs() > 1e-9 * radius {
                    return Err(Error::OffContour(format!("|{z}| != {radius}")));
                }
                Ok(self.mu_circle(z, radius))
            }
            Contour::Axis => {
                if z.im.abs() > 1e-12 * z.norm().max(1.0) {
                    return Err(Error::OffContour(format!("{z} is not real")));
                }
                Ok(self.mu_axis(z.re))
            }
        }
    }

    /// `mu` at contour parameter `t`. On the axis, `mu(+-inf) = 0`.
    pub fn mu_at(&self, t: f64) -> f64 {
        match self.contour {
            Contour::Circle { radius } => self.mu_circle(Complex64::from_polar(radius, t), radius),
            Contour::Axis => {
                if t.is_infinite() {
                    0.0
                } else {
                    self.mu_axis(t)
                }
            }
        }
    }

    fn mu_circle(&self, z: Complex64, radius: f64) -> f64 {
        self.poles
            .entries()
            .iter()
            .map(|p| {
                p.multiplicity as f64 * (radius * radius - p.location.norm_sqr())
                    / (z - p.location).norm_sqr()
            })
            .sum()
    }

    fn mu_axis(&self, x: f64) -> f64 {
        self.poles
            .entries()
            .iter()
            .map(|p| {
                let a = p.location;
                p.multiplicity as f64 * a.im / ((x - a.re).powi(2) + a.im * a.im)
            })
            .sum()
    }

    /// `lim_{x -> inf} x^2 mu(x) = sum n_k Im z_k` (axis only).
    pub fn mu_tail(&self) -> f64 {
        self.poles
            .entries()
            .iter()
            .map(|p| p.multiplicity as f64 * p.location.im)
            .sum()
    }

    /// Continuous phase of the notch equation.
    ///
    /// Circle: `arg(zeta B^m(zeta))` at `zeta = r e^{i theta}`, increasing by
    /// `2 pi (m total + 1)` per turn. Axis: `arg B^m(x)`, increasing from
    /// `-2 pi m total` at `-inf` to `0` at `+inf`.
    pub fn phase(&self, m: u32, t: f64) -> f64 {
        let m = m as f64;
        match self.contour {
            Contour::Circle { radius } => {
                let rot = Complex64::from_polar(1.0, -t);
                let arg_sum: f64 = self
                    .poles
                    .entries()
                    .iter()
                    .map(|p| p.multiplicity as f64 * (1.0 - p.location / radius * rot).arg())
                    .sum();
                (1.0 + m * self.total() as f64) * t + 2.0 * m * arg_sum
            }
            Contour::Axis => {
                let arg_sum: f64 = self
                    .poles
                    .entries()
                    .iter()
                    .map(|p| p.multiplicity as f64 * (-p.location.im).atan2(t - p.location.re))
                    .sum();
                2.0 * m * arg_sum
            }
        }
    }

    /// Derivative of [`Self::phase`]: `1 + m mu` on the circle, `2 m mu` on the axis.
    pub fn phase_derivative(&self, m: u32, t: f64) -> f64 {
        let m = m as f64;
        match self.contour {
            Contour::Circle { .. } => 1.0 + m * self.mu_at(t),
            Contour::Axis => 2.0 * m * self.mu_at(t),
        }
    }

    /// `sup mu` over the contour together with its location (`theta` or `x`).
    pub fn mu_sup(&self) -> Maximum {
        let samples = (64 * self.total() as usize).max(512);
        match self.contour {
            Contour::Circle { .. } => {
                let seeds: Vec<f64> = self
                    .poles
                    .entries()
                    .iter()
                    .filter(|p| p.location.norm() > 0.0)
                    .map(|p| p.location.arg())
                    .collect();
                let scan = Scan {
                    lo: 0.0,
                    hi: TAU,
                    samples,
                    seeds: &seeds,
                    periodic: true,
                    xtol: 1e-12,
                };
                maximize(|t| self.mu_at(t), &scan)
            }
            Contour::Axis => {
                let seeds: Vec<f64> = self
                    .poles
                    .entries()
                    .iter()
                    .map(|p| p.location.re.atan())
                    .collect();
                let scan = Scan {
                    lo: -FRAC_PI_2,
                    hi: FRAC_PI_2,
                    samples,
                    seeds: &seeds,
                    periodic: false,
                    xtol: 1e-12,
                };
                let m = maximize(|t| self.mu_at(t.tan()), &scan);
                Maximum {
                    arg: m.arg.tan(),
                    value: m.value,
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfun::Pole;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn disc(poles: &[(Complex64, u32)], r: f64) -> BlaschkeProduct {
        let set = PoleSet::new(
            poles.iter().map(|(z, n)| Pole::new(*z, *n)),
            Region::Disc { radius: r },
        )
        .unwrap();
        BlaschkeProduct::circle(set).unwrap()
    }

    fn upper(poles: &[(Complex64, u32)]) -> BlaschkeProduct {
        let set = PoleSet::new(
            poles.iter().map(|(z, n)| Pole::new(*z, *n)),
            Region::UpperHalfPlane,
        )
        .unwrap();
        BlaschkeProduct::axis(set).unwrap()
    }

    /// Unwrapped `arg(zeta B^m(zeta))` by direct evaluation with fine steps.
    fn unwrapped_phase(b: &BlaschkeProduct, m: u32, t0: f64, t1: f64, steps: usize) -> f64 {
        let f = |t: f64| {
            let z = b.point(t);
            let w = match b.contour() {
                Contour::Circle { .. } => z * b.eval(z, m).unwrap(),
                Contour::Axis => b.eval(z, m).unwrap(),
            };
            w.arg()
        };
        let mut acc = 0.0;
        let mut prev = f(t0);
        for i in 1..=steps {
            let cur = f(t0 + (t1 - t0) * i as f64 / steps as f64);
            let mut d = cur - prev;
            while d > PI {
                d -= TAU;
            }
            while d <= -PI {
                d += TAU;
            }
            acc += d;
            prev = cur;
        }
        acc
    }

    #[test]
    fn eval_examples() {
        let b = disc(&[(c(0.0, 0.0), 1)], 1.0);
        let z = Complex64::from_polar(1.0, 0.83);
        assert!((b.eval(z, 1).unwrap() - z).norm() < 1e-15);

        let b = upper(&[(c(0.0, 1.0), 1)]);
        assert!((b.eval(c(0.0, 0.0), 1).unwrap() - c(-1.0, 0.0)).norm() < 1e-15);

        let b = disc(&[(c(0.5, 0.0), 1)], 1.0);
        assert!((b.eval(c(1.0, 0.0), 1).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn mu_examples() {
        let b = upper(&[(c(0.0, 1.0), 1)]);
        assert_eq!(b.mu(c(0.0, 0.0)).unwrap(), 1.0);
        let b = disc(&[(c(0.5, 0.0), 1)], 1.0);
        assert!((b.mu(c(1.0, 0.0)).unwrap() - 3.0).abs() < 1e-15);
        // n (1 + delta) / (1 - delta) at zeta = r for a single pole delta r of multiplicity n.
        let b = disc(&[(c(0.5, 0.0), 2)], 1.0);
        assert!((b.mu(c(1.0, 0.0)).unwrap() - 6.0).abs() < 1e-14);
    }

    #[test]
    fn mu_off_contour_is_an_error() {
        let b = disc(&[(c(0.5, 0.0), 1)], 1.0);
        assert!(matches!(b.mu(c(0.5, 0.5)), Err(Error::OffContour(_))));
        let b = upper(&[(c(0.0, 1.0), 1)]);
        assert!(matches!(b.mu(c(0.5, 0.5)), Err(Error::OffContour(_))));
    }

    #[test]
    fn mu_sup_examples() {
        assert!((upper(&[(c(0.0, 1.0), 1)]).mu_sup().value - 1.0).abs() < 1e-15);
        assert!((disc(&[(c(0.5, 0.0), 1)], 1.0).mu_sup().value - 3.0).abs() < 1e-12);

        let b = upper(&[(c(1.0, 1.0), 1), (c(-1.0, 1.0), 1)]);
        let sup = b.mu_sup().value;
        // Brute-force scan with 10^6 points in the compactified variable.
        let n = 1_000_000;
        let brute = (0..n)
            .map(|i| {
                let t = -FRAC_PI_2 + PI * (i as f64 + 0.5) / n as f64;
                b.mu_at(t.tan())
            })
            .fold(0.0, f64::max);
        assert!(sup >= brute);
        assert!((sup - brute) / brute < 1e-8, "{sup} vs {brute}");
    }

    #[test]
    fn phase_derivative_examples() {
        let b = disc(&[(c(0.0, 0.0), 1)], 1.0);
        for t in [0.0, 1.0, 4.0] {
            assert!((b.phase_derivative(1, t) - 2.0).abs() < 1e-15);
        }
        let b = upper(&[(c(0.0, 1.0), 1)]);
        assert!((b.phase_derivative(1, 0.0) - 2.0).abs() < 1e-15);

        let b = disc(&[(c(0.5, 0.0), 1)], 1.0);
        let h = 1e-5;
        let fd = unwrapped_phase(&b, 2, -h, h, 2) / (2.0 * h);
        assert!((b.phase_derivative(2, 0.0) - 7.0).abs() < 1e-14);
        assert!((fd - 7.0).abs() < 1e-6, "{fd}");
    }

    #[test]
    fn closed_form_phase_matches_direct_argument() {
        let b = disc(&[(c(0.3, -0.4), 2), (c(-0.6, 0.1), 1)], 1.3);
        for &t in &[0.1, 1.7, 3.3, 5.9] {
            let z = b.point(t);
            let w = z * b.eval(z, 3).unwrap();
            let diff = (b.phase(3, t) - w.arg()).rem_euclid(TAU);
            assert!(diff.min(TAU - diff) < 1e-12);
        }
        let b = upper(&[(c(0.3, 0.4), 2), (c(-2.0, 0.1), 1)]);
        for &x in &[-5.0, 0.0, 0.35, 9.0] {
            let w = b.eval(c(x, 0.0), 2).unwrap();
            let diff = (b.phase(2, x) - w.arg()).rem_euclid(TAU);
            assert!(diff.min(TAU - diff) < 1e-12);
        }
    }

    #[test]
    fn total_winding() {
        let b = disc(&[(c(0.3, -0.4), 2), (c(-0.6, 0.1), 1)], 1.0);
        let m = 2;
        let closed = b.phase(m, TAU) - b.phase(m, 0.0);
        assert!((closed - TAU * (m as f64 * 3.0 + 1.0)).abs() < 1e-9);
        let direct = unwrapped_phase(&b, m, 0.0, TAU, 20_000);
        assert_eq!((direct / TAU).round() as i64, 7);

        let b = upper(&[(c(0.3, 0.4), 2), (c(-2.0, 0.1), 1)]);
        let span = b.phase(m, f64::INFINITY) - b.phase(m, f64::NEG_INFINITY);
        assert!((span - TAU * 6.0).abs() < 1e-9);
    }
}
