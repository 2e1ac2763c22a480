//! Variable quadrature nodes ("notches").
//!
//! Circle: the `m * total + 1` roots of `zeta B^m(zeta) = r e^{i phi}` on
//! `|zeta| = r`. Axis: the `m * total` roots of `B^m(x) = e^{i phi}` on the
//! extended real line, one of which is `x = inf` when `phi = 0 (mod 2 pi)`.
//! Semiaxis and segment nodes are axis and unit-circle nodes of lifted pole
//! sets.
//!
//! Roots are found on the closed-form continuous phase (see
//! [`BlaschkeProduct::phase`]): a monotone sample grid brackets every target
//! level, and a safeguarded Newton iteration polishes each bracket.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::blaschke::BlaschkeProduct;
use crate::domain::{Domain, Weight};
use crate::error::{Error, Result};
use crate::ratfun::{ComplexPoint, PoleSet, Region};
use crate::tol;

/// `phi` values this close to `0 (mod 2 pi)` put an axis node at infinity.
pub const INFINITE_NODE_PHI: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Notch {
    /// `theta` in `[0, 2 pi)` on circles, `x` on the axis (`+inf` for the
    /// infinite node), `u` with `x = u^2` on the semiaxis.
    pub param: f64,
    /// Point on the contour of the underlying Blaschke product.
    pub point: ComplexPoint,
    /// `mu` at the node; `None` at infinity.
    pub mu: Option<f64>,
    /// `|zeta B^m(zeta) / r - e^{i phi}|` or `|B^m(x) - e^{i phi}|`.
    pub residual: f64,
}

impl Notch {
    pub fn is_infinite(&self) -> bool {
        self.point.is_infinite()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NotchSet {
    pub domain: Domain,
    pub m: u32,
    pub phi: f64,
    pub notches: Vec<Notch>,
}

impl NotchSet {
    pub fn len(&self) -> usize {
        self.notches.len()
    }

    pub fn is_empty(&self) -> bool {
        self.notches.is_empty()
    }

    pub fn has_infinite_node(&self) -> bool {
        self.notches.iter().any(Notch::is_infinite)
    }

    pub fn max_residual(&self) -> f64 {
        self.notches.iter().map(|n| n.residual).fold(0.0, f64::max)
    }

    /// Nodes as points of the integration domain: `zeta` on the circle,
    /// `x` on the axis, `u^2` on the semiaxis and `Re zeta` on the segment.
    pub fn domain_points(&self) -> Vec<ComplexPoint> {
        self.notches
            .iter()
            .map(|n| match (self.domain, n.point) {
                (_, ComplexPoint::Infinity) => ComplexPoint::Infinity,
                (Domain::Semiaxis { .. }, ComplexPoint::Finite(u)) => ComplexPoint::Finite(u * u),
                (Domain::Segment, ComplexPoint::Finite(z)) => {
                    ComplexPoint::Finite(Complex64::new(z.re, 0.0))
                }
                (_, p) => p,
            })
            .collect()
    }
}

fn require_disc(poles: &PoleSet) -> Result<f64> {
    match poles.region() {
        Region::Disc { radius } => Ok(radius),
        Region::UpperHalfPlane => Err(Error::InvalidInput(
            "expected a disc pole set, got an upper half-plane one".into(),
        )),
    }
}

/// Safeguarded Newton on an increasing function inside `[lo, hi]`, where
/// `g(lo) <= 0 <= g(hi)`. `split` returns a point strictly inside a bracket.
fn polish(
    g: impl Fn(f64) -> (f64, f64),
    mut lo: f64,
    mut hi: f64,
    start: f64,
    split: impl Fn(f64, f64) -> f64,
) -> Result<f64> {
    let mut x = start;
    for _ in 0..tol::NEWTON_MAX_ITER {
        let (val, der) = g(x);
        if val.abs() <= tol::PHASE {
            return Ok(x);
        }
        if val < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let width = hi - lo;
        // An infinite end makes the relative test vacuous.
        if width.is_finite()
            && width <= 4.0 * f64::EPSILON * lo.abs().max(hi.abs()).max(f64::MIN_POSITIVE)
        {
            return Ok(x);
        }
        let newton = x - val / der;
        x = if der > 0.0 && newton > lo && newton < hi {
            newton
        } else {
            split(lo, hi)
        };
    }
    let (val, _) = g(x);
    if val.abs() <= 100.0 * tol::PHASE {
        Ok(x)
    } else {
        Err(Error::ConvergenceFailure(format!(
            "phase residual {val:.3e} after {} iterations in [{lo}, {hi}]",
            tol::NEWTON_MAX_ITER
        )))
    }
}

/// Grid size for bracketing a monotone phase with `count` target levels.
fn grid_size(count: usize) -> usize {
    (16 * count).max(256)
}

/// Solves `phase(theta) = target` on `[0, 2 pi)` for ascending targets.
fn solve_circle(b: &BlaschkeProduct, m: u32, targets: &[f64]) -> Result<Vec<f64>> {
    let k = grid_size(targets.len());
    let grid: Vec<f64> = (0..=k).map(|i| TAU * i as f64 / k as f64).collect();
    let levels: Vec<f64> = grid.iter().map(|&t| b.phase(m, t)).collect();
    targets
        .par_iter()
        .map(|&target| {
            let i = levels.partition_point(|&v| v <= target).clamp(1, k) - 1;
            if levels[i] == target {
                return Ok(grid[i]);
            }
            let (lo, hi) = (grid[i], grid[i + 1]);
            let frac = (target - levels[i]) / (levels[i + 1] - levels[i]);
            polish(
                |t| (b.phase(m, t) - target, b.phase_derivative(m, t)),
                lo,
                hi,
                lo + frac.clamp(0.0, 1.0) * (hi - lo),
                |a, c| 0.5 * (a + c),
            )
        })
        .collect()
}

fn circle_notches(b: &BlaschkeProduct, m: u32, phi: f64, domain: Domain) -> Result<NotchSet> {
    if m == 0 {
        return Err(Error::InvalidInput("m must be >= 1".into()));
    }
    let radius = require_disc(b.poles())?;
    let count = (m * b.total() + 1) as usize;
    let base = b.phase(m, 0.0);
    let first = base + (phi - base).rem_euclid(TAU);
    let targets: Vec<f64> = (0..count).map(|j| first + TAU * j as f64).collect();
    let thetas = solve_circle(b, m, &targets)?;
    let rhs = Complex64::from_polar(1.0, phi);
    let mut notches = thetas
        .into_iter()
        .map(|theta| {
            let theta = if theta >= TAU { theta - TAU } else { theta };
            let zeta = b.point(theta);
            let lhs = zeta * b.eval(zeta, m)? / radius;
            Ok(Notch {
                param: theta,
                point: ComplexPoint::Finite(zeta),
                mu: Some(b.mu_at(theta)),
                residual: (lhs - rhs).norm(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    // A root rounded onto 2 pi wraps to 0 and must move to the front.
    notches.sort_by(|a, b| a.param.total_cmp(&b.param));
    Ok(NotchSet {
        domain,
        m,
        phi,
        notches,
    })
}

/// All `m * total + 1` roots of `zeta B^m(zeta) = r e^{i phi}`, by ascending
/// `theta` in `[0, 2 pi)`. The pole set must be a disc pole set.
pub fn notches_circle(poles: &PoleSet, m: u32, phi: f64) -> Result<NotchSet> {
    let radius = require_disc(poles)?;
    let b = BlaschkeProduct::circle(poles.clone())?;
    circle_notches(&b, m, phi, Domain::Circle { radius })
}

/// Whether `phi` selects the infinite axis node.
pub fn is_infinite_phi(phi: f64) -> bool {
    let reduced = phi.rem_euclid(TAU);
    reduced < INFINITE_NODE_PHI || TAU - reduced < INFINITE_NODE_PHI
}

fn axis_notches(b: &BlaschkeProduct, m: u32, phi: f64, domain: Domain) -> Result<NotchSet> {
    if m == 0 {
        return Err(Error::InvalidInput("m must be >= 1".into()));
    }
    let count = (m * b.total()) as usize;
    let infinite = is_infinite_phi(phi);
    let reduced = if infinite { 0.0 } else { phi.rem_euclid(TAU) };
    // Phase runs from -2 pi count (at -inf) to 0 (at +inf).
    let first_j = if infinite { 1 } else { 0 };
    let targets: Vec<f64> = (first_j..count)
        .map(|j| reduced - TAU * (count - j) as f64)
        .collect();

    let k = grid_size(count);
    let grid: Vec<f64> = (0..=k)
        .map(|i| match i {
            0 => f64::NEG_INFINITY,
            i if i == k => f64::INFINITY,
            i => (-FRAC_PI_2 + PI * i as f64 / k as f64).tan(),
        })
        .collect();
    let levels: Vec<f64> = grid
        .iter()
        .enumerate()
        .map(|(i, &x)| match i {
            0 => -TAU * count as f64,
            i if i == k => 0.0,
            _ => b.phase(m, x),
        })
        .collect();
    let split = |a: f64, c: f64| (0.5 * (a.atan() + c.atan())).tan();
    let xs: Vec<f64> = targets
        .par_iter()
        .map(|&target| {
            let i = levels.partition_point(|&v| v <= target).clamp(1, k) - 1;
            if levels[i] == target && grid[i].is_finite() {
                return Ok(grid[i]);
            }
            let (lo, hi) = (grid[i], grid[i + 1]);
            polish(
                |x| (b.phase(m, x) - target, b.phase_derivative(m, x)),
                lo,
                hi,
                split(lo, hi),
                split,
            )
        })
        .collect::<Result<_>>()?;

    let rhs = Complex64::from_polar(1.0, phi);
    let mut notches = xs
        .into_iter()
        .map(|x| {
            let z = Complex64::new(x, 0.0);
            Ok(Notch {
                param: x,
                point: ComplexPoint::Finite(z),
                mu: Some(b.mu_at(x)),
                residual: (b.eval(z, m)? - rhs).norm(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    if infinite {
        notches.push(Notch {
            param: f64::INFINITY,
            point: ComplexPoint::Infinity,
            mu: None,
            residual: (Complex64::new(1.0, 0.0) - rhs).norm(),
        });
    }
    Ok(NotchSet {
        domain,
        m,
        phi,
        notches,
    })
}

/// All `m * total` roots of `B^m(x) = e^{i phi}` on the extended real line,
/// ascending, with the infinite node (if any) last.
pub fn notches_axis(poles: &PoleSet, m: u32, phi: f64) -> Result<NotchSet> {
    let b = BlaschkeProduct::axis(poles.clone())?;
    axis_notches(&b, m, phi, Domain::Axis)
}

/// Axis notches of a semiaxis-lifted pole set; `2 m n` nodes in the `u`
/// variable (`x = u^2`).
pub fn notches_semiaxis(poles: &PoleSet, m: u32, phi: f64, weight: Weight) -> Result<NotchSet> {
    let b = BlaschkeProduct::axis(poles.clone())?;
    axis_notches(&b, m, phi, Domain::Semiaxis { weight })
}

/// Unit-circle notches of a segment-lifted pole set; `x_k = Re zeta_k`.
pub fn notches_segment(poles: &PoleSet, m: u32, phi: f64) -> Result<NotchSet> {
    let radius = require_disc(poles)?;
    if radius != 1.0 {
        return Err(Error::BadGeometry(format!(
            "segment pole sets live in the unit disc, got radius {radius}"
        )));
    }
    let b = BlaschkeProduct::circle(poles.clone())?;
    circle_notches(&b, m, phi, Domain::Segment)
}

/// The `phi` that makes the contour point with parameter `t` a node:
/// `theta` on circles, `x` on the axis (`u` for lifted semiaxis sets).
pub fn prescribed_phi(b: &BlaschkeProduct, m: u32, t: f64) -> f64 {
    b.phase(m, t).rem_euclid(TAU)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfun::Pole;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn disc(poles: &[(Complex64, u32)], r: f64) -> PoleSet {
        PoleSet::new(
            poles.iter().map(|(z, n)| Pole::new(*z, *n)),
            Region::Disc { radius: r },
        )
        .unwrap()
    }

    fn upper(poles: &[(Complex64, u32)]) -> PoleSet {
        PoleSet::new(
            poles.iter().map(|(z, n)| Pole::new(*z, *n)),
            Region::UpperHalfPlane,
        )
        .unwrap()
    }

    fn points(set: &NotchSet) -> Vec<Complex64> {
        set.notches
            .iter()
            .filter_map(|n| n.point.finite())
            .collect()
    }

    fn assert_points(got: &[Complex64], want: &[Complex64], eps: f64) {
        assert_eq!(got.len(), want.len(), "{got:?} vs {want:?}");
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).norm() < eps, "{got:?} vs {want:?}");
        }
    }

    #[test]
    fn circle_examples() {
        let s = notches_circle(&disc(&[(c(0.0, 0.0), 1)], 1.0), 1, 0.0).unwrap();
        assert_points(&points(&s), &[c(1.0, 0.0), c(-1.0, 0.0)], 1e-14);

        let s = notches_circle(&disc(&[(c(0.0, 0.0), 1)], 1.0), 1, PI / 2.0).unwrap();
        let want = [
            Complex64::from_polar(1.0, PI / 4.0),
            Complex64::from_polar(1.0, 5.0 * PI / 4.0),
        ];
        assert_points(&points(&s), &want, 1e-14);

        let s = notches_circle(&disc(&[(c(0.5, 0.0), 1)], 1.0), 1, 0.0).unwrap();
        assert_points(&points(&s), &[c(1.0, 0.0), c(-1.0, 0.0)], 1e-14);
        assert!(s.max_residual() < 1e-12);

        let s = notches_circle(&disc(&[(c(0.5, 0.0), 2), (c(0.0, -0.3), 1)], 1.0), 3, 0.4).unwrap();
        assert_eq!(s.len(), 10);
        assert!(s.max_residual() < 1e-10);
    }

    #[test]
    fn axis_examples() {
        let s = notches_axis(&upper(&[(c(0.0, 1.0), 1)]), 1, PI).unwrap();
        assert_points(&points(&s), &[c(0.0, 0.0)], 1e-15);

        let s = notches_axis(&upper(&[(c(0.0, 1.0), 1)]), 1, 0.0).unwrap();
        assert_eq!(s.len(), 1);
        assert!(s.notches[0].is_infinite());
        assert_eq!(s.notches[0].mu, None);

        // ((x - i)/(x + i))^2 = -1 has the roots +-1; the pair 1 +- sqrt 2
        // belongs to phi = 3 pi / 2.
        let s = notches_axis(&upper(&[(c(0.0, 1.0), 1)]), 2, PI).unwrap();
        assert_points(&points(&s), &[c(-1.0, 0.0), c(1.0, 0.0)], 1e-14);
        let s = notches_axis(&upper(&[(c(0.0, 1.0), 1)]), 2, 1.5 * PI).unwrap();
        let r2 = 2f64.sqrt();
        assert_points(&points(&s), &[c(1.0 - r2, 0.0), c(1.0 + r2, 0.0)], 1e-14);
    }

    #[test]
    fn semiaxis_examples() {
        let s = notches_semiaxis(&upper(&[(c(0.0, 1.0), 2)]), 1, PI, Weight::InvSqrt).unwrap();
        assert_points(&points(&s), &[c(-1.0, 0.0), c(1.0, 0.0)], 1e-14);

        let lifted = upper(&[(c(1.0, 1.0), 2), (c(-1.0, 1.0), 2)]);
        let s = notches_semiaxis(&lifted, 2, 0.8, Weight::InvSqrt).unwrap();
        assert_eq!(s.len(), 8);

        let s = notches_semiaxis(&lifted, 1, PI, Weight::InvSqrt).unwrap();
        let xs: Vec<f64> = s.notches.iter().map(|n| n.param).collect();
        for (a, b) in xs.iter().zip(xs.iter().rev()) {
            assert!((a + b).abs() < 1e-12, "{xs:?}");
        }
    }

    #[test]
    fn segment_examples() {
        let s = notches_segment(&disc(&[(c(0.0, 0.0), 2)], 1.0), 1, 0.0).unwrap();
        let xs: Vec<f64> = s
            .domain_points()
            .iter()
            .map(|p| p.finite().unwrap().re)
            .collect();
        assert_eq!(xs.len(), 3);
        for (g, w) in xs.iter().zip([1.0, -0.5, -0.5]) {
            assert!((g - w).abs() < 1e-14);
        }
        let s = notches_segment(&disc(&[(c(0.0, 0.0), 4)], 1.0), 2, 0.0).unwrap();
        assert_eq!(s.len(), 9);

        let lifted = crate::ratfun::segment_lift(
            &crate::ratfun::RationalFunction::from_poles(
                c(1.0, 0.0),
                vec![Pole::new(c(0.3, 0.7), 1), Pole::new(c(-1.5, -0.2), 1)],
            )
            .unwrap(),
        )
        .unwrap();
        let s = notches_segment(&lifted, 1, 1.234).unwrap();
        assert_eq!(s.len(), 5);
        assert!(s.max_residual() < 1e-10);
    }

    #[test]
    fn interlacing_and_ordering() {
        let poles = disc(&[(c(0.3, -0.4), 2), (c(-0.6, 0.1), 1)], 1.0);
        let b = BlaschkeProduct::circle(poles.clone()).unwrap();
        let s = notches_circle(&poles, 2, 1.1).unwrap();
        for w in s.notches.windows(2) {
            assert!(w[0].param < w[1].param);
            let step = b.phase(2, w[1].param) - b.phase(2, w[0].param);
            assert!((step - TAU).abs() < 1e-10);
        }

        let poles = upper(&[(c(0.3, 0.4), 2), (c(-2.0, 0.1), 1)]);
        let b = BlaschkeProduct::axis(poles.clone()).unwrap();
        let s = notches_axis(&poles, 2, 0.0).unwrap();
        assert_eq!(s.len(), 6);
        assert!(s.notches.last().unwrap().is_infinite());
        let finite: Vec<f64> = s
            .notches
            .iter()
            .map(|n| n.param)
            .filter(|x| x.is_finite())
            .collect();
        for w in finite.windows(2) {
            assert!(w[0] < w[1]);
            assert!((b.phase(2, w[1]) - b.phase(2, w[0]) - TAU).abs() < 1e-10);
        }
    }

    #[test]
    fn sweep_is_continuous_and_periodic() {
        let poles = disc(&[(c(0.3, -0.4), 1), (c(-0.6, 0.1), 2)], 1.0);
        let b = BlaschkeProduct::circle(poles.clone()).unwrap();
        let cyclic = |a: f64, b: f64| {
            let d = (a - b).rem_euclid(TAU);
            d.min(TAU - d)
        };
        let dphi = 1e-3;
        for step in 1..=40 {
            let next = notches_circle(&poles, 2, step as f64 * 0.157).unwrap();
            let mid = notches_circle(&poles, 2, step as f64 * 0.157 + dphi).unwrap();
            assert_eq!(next.len(), mid.len());
            for n in &mid.notches {
                let o = next
                    .notches
                    .iter()
                    .min_by(|a, b| cyclic(a.param, n.param).total_cmp(&cyclic(b.param, n.param)))
                    .unwrap();
                let moved = cyclic(o.param, n.param);
                // Slowest phase speed on the arc the node travelled.
                let min_der = (0..=64)
                    .map(|k| b.phase_derivative(2, o.param + moved * k as f64 / 64.0))
                    .fold(f64::INFINITY, f64::min);
                assert!(
                    moved <= dphi / min_der + 1e-9,
                    "{moved} vs {}",
                    dphi / min_der
                );
            }
        }
        // A full turn of phi returns the same node set.
        let start = notches_circle(&poles, 2, 0.0).unwrap();
        let end = notches_circle(&poles, 2, TAU - 1e-12).unwrap();
        for (a, b) in start.notches.iter().zip(&end.notches) {
            assert!(cyclic(a.param, b.param) < 1e-10);
        }
    }

    #[test]
    fn far_nodes_converge() {
        // Small phi pushes one node out to about x = -340, inside the
        // grid's unbounded first cell.
        let poles = upper(&[(c(0.82, 2.84), 2)]);
        for phi in [1e-3, 0.1, TAU - 0.1] {
            let s = notches_axis(&poles, 3, phi).unwrap();
            assert!(s.max_residual() < 1e-10, "phi {phi}: {}", s.max_residual());
        }
    }

    #[test]
    fn prescribed_node_round_trip() {
        let poles = disc(&[(c(0.3, -0.4), 2), (c(-0.6, 0.1), 1)], 1.5);
        let b = BlaschkeProduct::circle(poles.clone()).unwrap();
        for &theta in &[0.0, 0.7, 3.0, 6.2] {
            let phi = prescribed_phi(&b, 3, theta);
            let s = notches_circle(&poles, 3, phi).unwrap();
            let best = s
                .notches
                .iter()
                .map(|n| {
                    let d = (n.param - theta).rem_euclid(TAU);
                    d.min(TAU - d)
                })
                .fold(f64::INFINITY, f64::min);
            assert!(best < 1e-10, "theta {theta}: {best}");
        }
    }
}
