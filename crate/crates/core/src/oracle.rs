//! Adaptive Gauss-Kronrod integration, independent of the notch machinery.
//!
//! Every contour integral is mapped to a finite parameter interval:
//! circle `zeta = r e^{i theta}`; axis `x = tan t`; semiaxis `x = u^2`,
//! `u = tan t`; segment `x = cos t` (absorbing the Chebyshev weight).

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex64;

use crate::domain::{Domain, Weight};
use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Evaluation budget before giving up.
pub const MAX_EVALUATIONS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralEstimate {
    pub value: Complex64,
    /// `|G7 - K15|` summed over panels; an upper estimate in practice.
    pub error_estimate: f64,
    pub subdivisions: usize,
    pub evaluations: usize,
    pub converged: bool,
}

impl IntegralEstimate {
    /// Value if converged, `NoConvergence` otherwise.
    pub fn checked(self) -> Result<Complex64> {
        if self.converged {
            Ok(self.value)
        } else {
            Err(Error::NoConvergence(format!(
                "error estimate {:.3e} after {} evaluations",
                self.error_estimate, self.evaluations
            )))
        }
    }
}

struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gk15(f: &impl Fn(f64) -> Complex64, a: f64, b: f64) -> Panel {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = h * XGK[j];
        let pair = f(c - dx) + f(c + dx);
        kronrod += pair * WGK[j];
        if j % 2 == 1 {
            gauss += pair * WG[j / 2];
        }
    }
    let value = kronrod * h;
    Panel {
        a,
        b,
        value,
        error: ((kronrod - gauss) * h).norm(),
    }
}

/// Adaptive integral of `f` over `[a, b]`. Panels are bisected in order of
/// decreasing error until the total error is below `tol * (1 + |value|)`.
pub fn integrate_interval(
    f: impl Fn(f64) -> Complex64,
    a: f64,
    b: f64,
    tol: f64,
) -> IntegralEstimate {
    integrate_panels(f, &[a, b], tol)
}

/// As [`integrate_interval`], starting from the panels between consecutive
/// `points` (sorted, first and last being the ends).
pub fn integrate_panels(
    f: impl Fn(f64) -> Complex64,
    points: &[f64],
    tol: f64,
) -> IntegralEstimate {
    let mut heap = BinaryHeap::new();
    for w in points.windows(2) {
        if w[1] > w[0] {
            heap.push(gk15(&f, w[0], w[1]));
        }
    }
    let mut value: Complex64 = heap.iter().map(|p| p.value).sum();
    let mut error: f64 = heap.iter().map(|p| p.error).sum();
    let mut evaluations = 15 * heap.len();
    let mut subdivisions = 0;
    let mut converged = false;
    let mut frozen: Vec<Panel> = Vec::new();
    loop {
        // Periodic resummation keeps the running totals free of drift.
        if subdivisions % 64 == 0 {
            value = heap.iter().chain(&frozen).map(|p| p.value).sum();
            error = heap.iter().chain(&frozen).map(|p| p.error).sum();
        }
        if error <= tol * (1.0 + value.norm()) {
            value = heap.iter().chain(&frozen).map(|p| p.value).sum();
            error = heap.iter().chain(&frozen).map(|p| p.error).sum();
            if error <= tol * (1.0 + value.norm()) {
                converged = true;
                break;
            }
        }
        if evaluations + 30 > MAX_EVALUATIONS {
            break;
        }
        let Some(worst) = heap.pop() else {
            break;
        };
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Cannot be split further in floating point; its error stays.
            frozen.push(worst);
            continue;
        }
        let left = gk15(&f, worst.a, mid);
        let right = gk15(&f, mid, worst.b);
        evaluations += 30;
        subdivisions += 1;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    let value: Complex64 = heap.iter().chain(&frozen).map(|p| p.value).sum();
    let error_estimate = heap.iter().chain(&frozen).map(|p| p.error).sum();
    IntegralEstimate {
        value,
        error_estimate,
        subdivisions,
        evaluations,
        converged,
    }
}

fn guard(v: Complex64) -> Complex64 {
    if v.is_finite() {
        v
    } else {
        Complex64::new(0.0, 0.0)
    }
}

/// Integral of `f` over a contour, where `f` receives the contour point.
///
/// Circle: `int f(zeta) |d zeta|`. Axis: `int_R f(x) dx`. Semiaxis:
/// `int_0^inf f(x) w(x) dx`. Segment: `int_{-1}^{1} f(x) dx / sqrt(1 - x^2)`.
/// Values that overflow at the far ends of a compactified line are treated
/// as zero, which presumes `f` is integrable there.
pub fn integrate(f: impl Fn(Complex64) -> Complex64, domain: Domain, tol: f64) -> IntegralEstimate {
    integrate_near(f, domain, &[], tol)
}

/// Offsets, in units of the distance to the contour, at which a pole's peak
/// gets initial panel boundaries.
const PEAK_OFFSETS: [f64; 5] = [-4.0, -1.0, 0.0, 1.0, 4.0];

/// Parameter-space panel boundaries around the contour points nearest to
/// `poles`. Without them a peak much narrower than the first panels can fall
/// between all Kronrod nodes and be missed with a tiny error estimate.
fn peak_points(
    domain: Domain,
    poles: &[Complex64],
    to_param: impl Fn(f64) -> f64,
    lo: f64,
    hi: f64,
) -> Vec<f64> {
    let mut points = vec![lo, hi];
    for z in poles {
        let (centre, width) = match domain {
            Domain::Circle { radius } => {
                (z.arg().rem_euclid(TAU), (z.norm() - radius).abs() / radius)
            }
            _ => (z.re, z.im.abs().max(1e-300)),
        };
        for k in PEAK_OFFSETS {
            let t = match domain {
                Domain::Circle { .. } => (centre + k * width).rem_euclid(TAU),
                _ => to_param(centre + k * width),
            };
            if t.is_finite() && t > lo && t < hi {
                points.push(t);
            }
        }
    }
    points.sort_by(f64::total_cmp);
    points.dedup();
    points
}

/// [`integrate`] with initial panels placed around the peaks caused by
/// nearby poles.
pub fn integrate_near(
    f: impl Fn(Complex64) -> Complex64,
    domain: Domain,
    poles: &[Complex64],
    tol: f64,
) -> IntegralEstimate {
    match domain {
        Domain::Circle { radius } => integrate_panels(
            |t| f(Complex64::from_polar(radius, t)) * radius,
            &peak_points(domain, poles, |t| t, 0.0, TAU),
            tol,
        ),
        Domain::Axis => integrate_panels(
            |t| {
                let x = t.tan();
                guard(f(Complex64::new(x, 0.0)) * (1.0 + x * x))
            },
            &peak_points(domain, poles, f64::atan, -FRAC_PI_2, FRAC_PI_2),
            tol,
        ),
        Domain::Semiaxis { weight } => integrate_panels(
            |t| {
                let u = t.tan();
                let x = u * u;
                let w = match weight {
                    Weight::InvSqrt => 2.0,
                    Weight::Sqrt => 2.0 * x,
                };
                guard(f(Complex64::new(x, 0.0)) * w * (1.0 + x))
            },
            &peak_points(domain, poles, |x| x.max(0.0).sqrt().atan(), 0.0, FRAC_PI_2),
            tol,
        ),
        Domain::Segment => {
            // x = cos t runs backwards; the points are sorted afterwards.
            integrate_panels(
                |t| f(Complex64::new(t.cos(), 0.0)),
                &peak_points(domain, poles, |x| x.clamp(-1.0, 1.0).acos(), 0.0, PI),
                tol,
            )
        }
    }
}

/// `int_R f(x) dx` for an integrand decaying like `|x|^{-s}`, `s > 1`.
///
/// For `s >= 2` this is the plain tangent map. Slower decay leaves an
/// endpoint singularity after `x = tan t`, so the grading
/// `x = v / (1 - v^2)^beta` with `beta = 2 / (s - 1)` is used instead, which
/// makes the transformed integrand vanish linearly at `v = +-1`.
pub fn integrate_axis_decaying(
    f: impl Fn(f64) -> Complex64,
    s: f64,
    poles: &[Complex64],
    tol: f64,
) -> IntegralEstimate {
    if s >= 2.0 {
        return integrate_near(|z| f(z.re), Domain::Axis, poles, tol);
    }
    let beta = 2.0 / (s - 1.0);
    let grade = |v: f64| v / (1.0 - v * v).powf(beta);
    // The grading is increasing on (-1, 1); invert it by bisection.
    let inverse = |x: f64| {
        let (mut lo, mut hi) = (-1.0f64, 1.0f64);
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if grade(mid) < x {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    };
    integrate_panels(
        |v| {
            let w = 1.0 - v * v;
            let x = v / w.powf(beta);
            let jac = (w + 2.0 * beta * v * v) / w.powf(beta + 1.0);
            guard(f(x) * jac)
        },
        &peak_points(Domain::Axis, poles, inverse, -1.0, 1.0),
        tol,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn narrow_peaks_are_found() {
        // int dx / ((x - a)^2 + eps^2) = pi / eps, for a peak far narrower
        // than the initial panels.
        for (a, eps) in [(2.7, 1e-3), (-40.0, 0.05), (0.3, 1e-4)] {
            let pole = c(a, eps);
            let lorentz = |z: Complex64| 1.0 / ((z - pole) * (z - pole.conj()));
            let est = integrate_near(lorentz, Domain::Axis, &[pole], 1e-10);
            assert!(est.converged);
            assert!(
                (est.value.re - PI / eps).abs() < 1e-9 * PI / eps,
                "{a} {eps}: {}",
                est.value
            );
            let on_circle = Complex64::from_polar(1.0 + eps, a);
            let est = integrate_near(
                |z| c(1.0 / (z - on_circle).norm_sqr(), 0.0),
                Domain::Circle { radius: 1.0 },
                &[on_circle],
                1e-10,
            );
            // Poisson kernel: int dtheta / |e^{it} - R e^{ia}|^2 = 2 pi / (R^2 - 1).
            let want = TAU / ((1.0 + eps).powi(2) - 1.0);
            assert!(
                (est.value.re - want).abs() < 1e-9 * want,
                "circle {a} {eps}"
            );
        }
    }

    #[test]
    fn axis_lorentzian() {
        let est = integrate(|x| 1.0 / (x * x + 1.0), Domain::Axis, 1e-10);
        assert!(est.converged);
        assert!((est.value.re - PI).abs() < 1e-10);
    }

    #[test]
    fn segment_polynomial() {
        let est = integrate(|x| (2.0 * x + 1.0).powu(2), Domain::Segment, 1e-10);
        assert!((est.value.re - 3.0 * PI).abs() < 1e-9);
    }

    #[test]
    fn semiaxis_weights() {
        let est = integrate(
            |x| 1.0 / (x + 1.0),
            Domain::Semiaxis {
                weight: Weight::InvSqrt,
            },
            1e-10,
        );
        assert!((est.value.re - PI).abs() < 1e-10);
        let est = integrate(
            |x| 1.0 / (x + 1.0).powu(2),
            Domain::Semiaxis {
                weight: Weight::Sqrt,
            },
            1e-10,
        );
        assert!((est.value.re - PI / 2.0).abs() < 1e-10);
    }

    #[test]
    fn circle_residues() {
        // d theta = d zeta / (i zeta): the residues at 0 and 1/2 cancel.
        let est = integrate(|z| 1.0 / (z - 0.5), Domain::Circle { radius: 1.0 }, 1e-10);
        assert!(est.value.norm() < 1e-9);
        let est = integrate(|z| 1.0 / (z - 2.0), Domain::Circle { radius: 1.0 }, 1e-10);
        assert!((est.value - c(-PI, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn graded_map_handles_slow_decay() {
        // int (1 + x^2)^{-3/4} dx = sqrt(pi) Gamma(1/4) / Gamma(3/4)
        let exact = PI.sqrt() * 3.625_609_908_221_908 / 1.225_416_702_465_178;
        let est = integrate_axis_decaying(|x| c((1.0 + x * x).powf(-0.75), 0.0), 1.5, &[], 1e-10);
        assert!(est.converged);
        assert!(
            (est.value.re - exact).abs() < 1e-8 * exact,
            "{}",
            est.value.re
        );
    }

    #[test]
    fn error_estimate_is_honest() {
        // Known closed forms: int dx / (x^2 + a^2) = pi / a.
        for k in 1..=50 {
            let a = 0.05 + 0.1 * k as f64;
            let est = integrate(|x| 1.0 / (x * x + a * a), Domain::Axis, 1e-6);
            let err = (est.value.re - PI / a).abs();
            assert!(
                err <= 3.0 * est.error_estimate.max(1e-15),
                "a = {a}: {err} vs {}",
                est.error_estimate
            );
        }
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        // Not integrable: refinement never settles.
        let est = integrate_interval(|x| c((x - 1.0 / 3.0).powi(-2), 0.0), 0.0, 1.0, 1e-10);
        assert!(est.evaluations + 30 > MAX_EVALUATIONS);
        assert!(!est.converged);
        assert!(est.checked().is_err());
    }
}
