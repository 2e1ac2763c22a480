//! Complex rational functions in factored-denominator form and the pole
//! symmetrization maps that feed the Blaschke products of each contour.
//!
//! A [`RationalFunction`] is `P(z) / prod (z - z_k)^{n_k}` with the numerator
//! stored by ascending coefficients and the denominator kept factored. A pole
//! at infinity is implicit: it has multiplicity `deg P - sum n_k` whenever that
//! is positive.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tol;

/// A point of the extended complex plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ComplexPoint {
    Finite(Complex64),
    Infinity,
}

impl ComplexPoint {
    pub fn finite(self) -> Option<Complex64> {
        match self {
            ComplexPoint::Finite(z) => Some(z),
            ComplexPoint::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, ComplexPoint::Infinity)
    }
}

impl From<Complex64> for ComplexPoint {
    fn from(z: Complex64) -> Self {
        ComplexPoint::Finite(z)
    }
}

/// A finite pole with its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Pole {
    pub location: Complex64,
    pub multiplicity: u32,
}

impl Pole {
    pub fn new(location: Complex64, multiplicity: u32) -> Self {
        Self {
            location,
            multiplicity,
        }
    }
}

/// Region that a [`PoleSet`] is confined to.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    Disc { radius: f64 },
    UpperHalfPlane,
}

impl Region {
    pub fn unit_disc() -> Self {
        Region::Disc { radius: 1.0 }
    }

    fn contains(&self, z: Complex64) -> bool {
        match *self {
            Region::Disc { radius } => z.norm() < radius,
            Region::UpperHalfPlane => z.im > 0.0,
        }
    }
}

/// Symmetrized pole list `{(z_k, n_k)}` strictly inside a disc or the upper
/// half-plane. This is the data that determines `B` and `mu`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PoleSet {
    entries: Vec<Pole>,
    total: u32,
    region: Region,
}

impl PoleSet {
    /// Builds a pole set, merging locations closer than the merge tolerance.
    pub fn new(entries: impl IntoIterator<Item = Pole>, region: Region) -> Result<Self> {
        let entries = merge_poles(entries);
        if let Region::Disc { radius } = region {
            if !(radius > 0.0 && radius.is_finite()) {
                return Err(Error::BadGeometry(format!("disc radius {radius}")));
            }
        }
        for p in &entries {
            if p.multiplicity == 0 {
                return Err(Error::InvalidInput("pole multiplicity must be >= 1".into()));
            }
            if !region.contains(p.location) || !p.location.is_finite() {
                return Err(Error::InvalidInput(format!(
                    "pole {} is not strictly inside {:?}",
                    p.location, region
                )));
            }
        }
        let total: u32 = entries.iter().map(|p| p.multiplicity).sum();
        if total == 0 {
            return Err(Error::PoleSetEmpty);
        }
        Ok(Self {
            entries,
            total,
            region,
        })
    }

    pub fn entries(&self) -> &[Pole] {
        &self.entries
    }

    /// Sum of multiplicities.
    pub fn total(&self) -> u32 {
        self.total
    }

    pub fn region(&self) -> Region {
        self.region
    }

    /// Smallest distance from a pole to the boundary of the region.
    pub fn boundary_distance(&self) -> f64 {
        self.entries
            .iter()
            .map(|p| match self.region {
                Region::Disc { radius } => radius - p.location.norm(),
                Region::UpperHalfPlane => p.location.im,
            })
            .fold(f64::INFINITY, f64::min)
    }
}

/// Greedy merge of coincident locations with summed multiplicities.
pub(crate) fn merge_poles(poles: impl IntoIterator<Item = Pole>) -> Vec<Pole> {
    let mut out: Vec<Pole> = Vec::new();
    for p in poles {
        let scale = p.location.norm().max(1.0);
        match out
            .iter_mut()
            .find(|q| (q.location - p.location).norm() <= tol::MERGE * scale)
        {
            Some(q) => q.multiplicity += p.multiplicity,
            None => out.push(p),
        }
    }
    out
}

/// `P(z) / prod (z - z_k)^{n_k}` with a factored denominator.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalFunction {
    numerator: Vec<Complex64>,
    poles: Vec<Pole>,
}

impl RationalFunction {
    /// Validates and builds a rational function. Trailing zero coefficients are
    /// trimmed; the numerator must not vanish identically and pole locations
    /// must be finite and pairwise distinct.
    pub fn new(numerator: Vec<Complex64>, poles: Vec<Pole>) -> Result<Self> {
        let mut numerator = numerator;
        while numerator
            .last()
            .is_some_and(|c| *c == Complex64::new(0.0, 0.0))
        {
            numerator.pop();
        }
        if numerator.is_empty() {
            return Err(Error::InvalidInput("numerator is identically zero".into()));
        }
        if numerator.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidInput(
                "non-finite numerator coefficient".into(),
            ));
        }
        for (i, p) in poles.iter().enumerate() {
            if p.multiplicity == 0 {
                return Err(Error::InvalidInput("pole multiplicity must be >= 1".into()));
            }
            if !p.location.is_finite() {
                return Err(Error::InvalidInput("pole locations must be finite".into()));
            }
            for q in &poles[..i] {
                let scale = p.location.norm().max(1.0);
                if (q.location - p.location).norm() <= tol::MERGE * scale {
                    return Err(Error::InvalidInput(format!(
                        "duplicate pole location {}",
                        p.location
                    )));
                }
            }
        }
        Ok(Self { numerator, poles })
    }

    pub fn polynomial(coefficients: Vec<Complex64>) -> Result<Self> {
        Self::new(coefficients, Vec::new())
    }

    /// `c / prod (z - z_k)^{n_k}`.
    pub fn from_poles(scale: Complex64, poles: Vec<Pole>) -> Result<Self> {
        Self::new(vec![scale], poles)
    }

    pub fn numerator(&self) -> &[Complex64] {
        &self.numerator
    }

    pub fn poles(&self) -> &[Pole] {
        &self.poles
    }

    pub fn numerator_degree(&self) -> u32 {
        (self.numerator.len() - 1) as u32
    }

    /// Sum of finite pole multiplicities.
    pub fn pole_count(&self) -> u32 {
        self.poles.iter().map(|p| p.multiplicity).sum()
    }

    /// `max(deg P, sum n_k)`.
    pub fn degree(&self) -> u32 {
        self.numerator_degree().max(self.pole_count())
    }

    /// Multiplicity of the pole at infinity (zero when there is none).
    pub fn infinity_multiplicity(&self) -> u32 {
        self.numerator_degree().saturating_sub(self.pole_count())
    }

    pub fn is_proper(&self) -> bool {
        self.numerator_degree() < self.pole_count()
    }

    /// Order of decay at infinity: `R(z) ~ lead * z^{-decay}`.
    pub fn decay_order(&self) -> i64 {
        self.pole_count() as i64 - self.numerator_degree() as i64
    }

    pub fn leading_coefficient(&self) -> Complex64 {
        *self.numerator.last().expect("numerator is non-empty")
    }

    pub fn eval_numerator(&self, z: Complex64) -> Complex64 {
        self.numerator
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
    }

    /// Evaluates `R(z)`; fails if `z` is (numerically) a pole.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        let mut den = Complex64::new(1.0, 0.0);
        for p in &self.poles {
            let d = z - p.location;
            if d.norm() <= tol::POLE_EVAL * p.location.norm().max(1.0) {
                return Err(Error::EvalAtPole { re: z.re, im: z.im });
            }
            den *= d.powu(p.multiplicity);
        }
        Ok(self.eval_numerator(z) / den)
    }

    /// `|R(z)|^2`, computed without forming the complex quotient.
    pub fn modulus_sq(&self, z: Complex64) -> Result<f64> {
        Ok(self.eval(z)?.norm_sqr())
    }

    /// `R(z)^m` as a new rational function (numerator expanded, poles scaled).
    pub fn pow(&self, m: u32) -> Self {
        let mut num = vec![Complex64::new(1.0, 0.0)];
        for _ in 0..m {
            num = poly_mul(&num, &self.numerator);
        }
        let poles = self
            .poles
            .iter()
            .map(|p| Pole::new(p.location, p.multiplicity * m))
            .collect();
        Self {
            numerator: num,
            poles,
        }
    }
}

pub(crate) fn poly_mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Ascending coefficients of `prod (z - r_k)`.
pub(crate) fn poly_from_roots(roots: &[Complex64]) -> Vec<Complex64> {
    roots.iter().fold(vec![Complex64::new(1.0, 0.0)], |acc, r| {
        poly_mul(&acc, &[-r, Complex64::new(1.0, 0.0)])
    })
}

fn contour_error(z: Complex64) -> Error {
    Error::PoleOnContour { re: z.re, im: z.im }
}

/// Poles inside `|z| < r` of `R(z) * conj(R(r^2 / conj z))`.
///
/// Inner poles are kept, outer poles are reflected to `r^2 / conj(z_k)` and a
/// pole at infinity of multiplicity `d` lands at the origin with the same
/// multiplicity. The total is `deg R`.
pub fn reflect_circle(f: &RationalFunction, r: f64) -> Result<PoleSet> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::BadGeometry(format!("circle radius {r}")));
    }
    let mut out = Vec::with_capacity(f.poles().len() + 1);
    for p in f.poles() {
        let z = p.location;
        let modulus = z.norm();
        if (modulus - r).abs() <= tol::CONTOUR * r {
            return Err(contour_error(z));
        }
        let loc = if modulus < r { z } else { r * r / z.conj() };
        out.push(Pole::new(loc, p.multiplicity));
    }
    let at_infinity = f.infinity_multiplicity();
    if at_infinity > 0 {
        out.push(Pole::new(Complex64::new(0.0, 0.0), at_infinity));
    }
    PoleSet::new(out, Region::Disc { radius: r })
}

fn require_proper(f: &RationalFunction) -> Result<()> {
    if f.is_proper() {
        Ok(())
    } else {
        Err(Error::NotProper {
            num: f.numerator_degree() as usize,
            den: f.pole_count() as usize,
        })
    }
}

/// Poles in the upper half-plane of `R(z) * conj(R(conj z))`: upper poles are
/// kept and lower poles conjugated.
pub fn reflect_axis(f: &RationalFunction) -> Result<PoleSet> {
    require_proper(f)?;
    let mut out = Vec::with_capacity(f.poles().len());
    for p in f.poles() {
        let z = p.location;
        if z.im.abs() <= tol::CONTOUR * z.norm().max(1.0) {
            return Err(contour_error(z));
        }
        let loc = if z.im > 0.0 { z } else { z.conj() };
        out.push(Pole::new(loc, p.multiplicity));
    }
    PoleSet::new(out, Region::UpperHalfPlane)
}

/// Upper half-plane poles of `R(z^2) * conj(R(conj(z)^2))`.
///
/// A pole `r e^{i phi}` with `phi` in `(0, 2 pi)` produces `sqrt(r) e^{i phi/2}`
/// and `-sqrt(r) e^{-i phi/2}`, both with the pole's multiplicity.
pub fn semiaxis_lift(f: &RationalFunction) -> Result<PoleSet> {
    require_proper(f)?;
    let mut out = Vec::with_capacity(2 * f.poles().len());
    for p in f.poles() {
        let w = p.location;
        let (modulus, mut angle) = w.to_polar();
        if modulus <= tol::CONTOUR || angle.abs() <= tol::CONTOUR {
            return Err(Error::PoleOnSemiaxis { re: w.re, im: w.im });
        }
        if angle < 0.0 {
            angle += std::f64::consts::TAU;
        }
        let root = Complex64::from_polar(modulus.sqrt(), angle / 2.0);
        out.push(Pole::new(root, p.multiplicity));
        out.push(Pole::new(-root.conj(), p.multiplicity));
    }
    PoleSet::new(out, Region::UpperHalfPlane)
}

/// Root inside the unit disc of `(z + 1/z) / 2 = w`, for `w` off `[-1, 1]`.
pub fn joukowski_inner_root(w: Complex64) -> Result<Complex64> {
    let nearest = Complex64::new(w.re.clamp(-1.0, 1.0), 0.0);
    if (w - nearest).norm() <= tol::CONTOUR {
        return Err(Error::PoleOnSegment { re: w.re, im: w.im });
    }
    let s = (w * w - 1.0).sqrt();
    let (a, b) = (w + s, w - s);
    let big = if a.norm() >= b.norm() { a } else { b };
    let small = 1.0 / big;
    if (1.0 - small.norm()).abs() <= tol::CONTOUR {
        return Err(Error::PoleOnSegment { re: w.re, im: w.im });
    }
    Ok(small)
}

/// Unit-disc poles of `R1(z) * conj(R1(1/conj z))` with `R1(z) = R((z + 1/z)/2)`.
///
/// Each finite pole `w` contributes its inner Joukowski preimage and that
/// point's conjugate; a pole at infinity of multiplicity `d` contributes the
/// origin with multiplicity `2d`. The total is `2 deg R`.
pub fn segment_lift(f: &RationalFunction) -> Result<PoleSet> {
    let mut out = Vec::with_capacity(2 * f.poles().len() + 1);
    for p in f.poles() {
        let inner = joukowski_inner_root(p.location)?;
        out.push(Pole::new(inner, p.multiplicity));
        out.push(Pole::new(inner.conj(), p.multiplicity));
    }
    let at_infinity = f.infinity_multiplicity();
    if at_infinity > 0 {
        out.push(Pole::new(Complex64::new(0.0, 0.0), 2 * at_infinity));
    }
    PoleSet::new(out, Region::unit_disc())
}

/// Which side(s) of the real axis the poles of an SPF occupy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Upper,
    Lower,
    Both,
}

/// `rho(z) = sum 1/(z - z_k)`, the logarithmic derivative of `prod (z - z_k)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimplePartialFraction {
    poles: Vec<Complex64>,
}

impl SimplePartialFraction {
    pub fn new(poles: Vec<Complex64>) -> Result<Self> {
        if poles.is_empty() {
            return Err(Error::InvalidInput("SPF needs at least one pole".into()));
        }
        if poles.iter().any(|z| !z.is_finite()) {
            return Err(Error::InvalidInput("SPF poles must be finite".into()));
        }
        Ok(Self { poles })
    }

    pub fn poles(&self) -> &[Complex64] {
        &self.poles
    }

    pub fn degree(&self) -> usize {
        self.poles.len()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.poles.iter().map(|p| 1.0 / (z - p)).sum()
    }

    /// `None` if some pole is real.
    pub fn side(&self) -> Option<Side> {
        let upper = self.poles.iter().filter(|z| z.im > 0.0).count();
        let lower = self.poles.iter().filter(|z| z.im < 0.0).count();
        if upper + lower < self.poles.len() {
            None
        } else if lower == 0 {
            Some(Side::Upper)
        } else if upper == 0 {
            Some(Side::Lower)
        } else {
            Some(Side::Both)
        }
    }
}

/// Collapses `sum 1/(z - z_k)` into one rational function with simple poles at
/// the distinct `z_k`; the expanded numerator has degree `#distinct - 1`.
pub fn spf_to_rational(rho: &SimplePartialFraction) -> RationalFunction {
    let merged = merge_poles(rho.poles().iter().map(|z| Pole::new(*z, 1)));
    let locations: Vec<Complex64> = merged.iter().map(|p| p.location).collect();
    let mut numerator = vec![Complex64::new(0.0, 0.0); locations.len()];
    for (j, p) in merged.iter().enumerate() {
        let others: Vec<Complex64> = locations
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != j)
            .map(|(_, z)| *z)
            .collect();
        for (c, term) in numerator.iter_mut().zip(poly_from_roots(&others)) {
            *c += term * p.multiplicity as f64;
        }
    }
    let poles = locations.into_iter().map(|z| Pole::new(z, 1)).collect();
    RationalFunction::new(numerator, poles).expect("SPF numerator has nonzero leading term")
}
