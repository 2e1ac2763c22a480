//! Functions that turn the inequalities into equalities.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::norms::{lp_norm, sup_modulus};
use super::rational::{geometric_constant, mu_exact_constant, pointwise_bound, Geometry};
use super::spf::{rho_p, spf_bounds};
use super::{BoundReport, NikolskiiParams};
use crate::blaschke::{BlaschkeProduct, Contour};
use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::notches::{is_infinite_phi, prescribed_phi};
use crate::ratfun::{
    poly_from_roots, poly_mul, spf_to_rational, Pole, PoleSet, RationalFunction, Region,
    SimplePartialFraction,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    /// `(z B(z) - r e^{i phi}) / (z - zeta_1)` with `zeta_1` at the maximum of `mu`.
    CircleStar,
    /// The previous one for the single pole `delta r` of multiplicity `n`.
    CircleDeltaStar,
    /// `(B_*(x) - e^{i phi}) / (x - x_1)` with `x_1` at the maximum of `mu_*`.
    AxisStar,
    /// `1 / (z - i y0(p))`.
    RhoP,
    /// `P*_n(cos t) = sin((2n + 1) t / 2) / sin(t / 2)`.
    SegmentJacobi,
    /// `T*(t) = 1 + 2 sum_{k <= n} cos kt + e^{i (n + 1) t}`.
    TrigStar,
    /// `(z^{n+1} - r^{n+1}) / (z - r)`.
    CirclePolynomial,
}

impl WitnessKind {
    pub const ALL: [WitnessKind; 7] = [
        WitnessKind::CircleStar,
        WitnessKind::CircleDeltaStar,
        WitnessKind::AxisStar,
        WitnessKind::RhoP,
        WitnessKind::SegmentJacobi,
        WitnessKind::TrigStar,
        WitnessKind::CirclePolynomial,
    ];

    pub fn name(self) -> &'static str {
        match self {
            WitnessKind::CircleStar => "circle_star",
            WitnessKind::CircleDeltaStar => "circle_delta_star",
            WitnessKind::AxisStar => "axis_star",
            WitnessKind::RhoP => "rho_p",
            WitnessKind::SegmentJacobi => "segment_jacobi",
            WitnessKind::TrigStar => "trig_star",
            WitnessKind::CirclePolynomial => "circle_polynomial",
        }
    }
}

impl fmt::Display for WitnessKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for WitnessKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        WitnessKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::BadKind(s.to_string()))
    }
}

/// Inputs for [`extremal_witness`]; each kind reads the fields it needs.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct WitnessParams {
    pub n: Option<u32>,
    pub delta: Option<f64>,
    pub r: Option<f64>,
    pub p: Option<f64>,
    /// Poles of the Blaschke product (star kinds).
    pub poles: Vec<Pole>,
}

/// Quotient `g(z) / (z - node)` with `g = z B - r e^{i phi}` (circle) or
/// `g = B - e^{i phi}` (axis), where `g(node) = 0`.
#[derive(Debug, Clone)]
struct Quotient {
    b: BlaschkeProduct,
    phi: f64,
    node: Complex64,
}

impl Quotient {
    fn g(&self, z: Complex64) -> Result<Complex64> {
        let target = Complex64::from_polar(1.0, self.phi);
        Ok(match self.b.contour() {
            Contour::Circle { radius } => z * self.b.eval(z, 1)? - radius * target,
            Contour::Axis => self.b.eval(z, 1)? - target,
        })
    }

    fn g_prime(&self, z: Complex64) -> Result<Complex64> {
        let b = self.b.eval(z, 1)?;
        let ld = self.b.log_derivative(z);
        Ok(match self.b.contour() {
            Contour::Circle { .. } => b * (1.0 + z * ld),
            Contour::Axis => b * ld,
        })
    }

    fn eval(&self, z: Complex64) -> Result<Complex64> {
        let h = z - self.node;
        if h.norm() <= 1e-6 * self.node.norm().max(1.0) {
            // Difference quotient of g equals g' at the midpoint to O(h^2).
            self.g_prime(self.node + 0.5 * h)
        } else {
            Ok(self.g(z)? / h)
        }
    }
}

#[derive(Debug, Clone)]
pub struct Witness {
    pub kind: WitnessKind,
    pub domain: Domain,
    /// Rational form, with the notch factor divided out of the numerator.
    pub function: RationalFunction,
    pub spf: Option<SimplePartialFraction>,
    /// Where the extremum sits: `theta` on the circle, `x` elsewhere.
    pub anchor: f64,
    pub phi: Option<f64>,
    pub params: WitnessParams,
    quotient: Option<Quotient>,
}

impl Witness {
    /// Evaluates the witness; star kinds use their quotient form.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        match &self.quotient {
            Some(q) => q.eval(z),
            None => self.function.eval(z),
        }
    }

    fn anchor_point(&self) -> Complex64 {
        match self.domain {
            Domain::Circle { radius } => Complex64::from_polar(radius, self.anchor),
            _ => Complex64::new(self.anchor, 0.0),
        }
    }

    /// `sup |witness|` over its contour.
    pub fn sup(&self) -> f64 {
        let mut hints: Vec<Complex64> = self.function.poles().iter().map(|p| p.location).collect();
        hints.push(self.anchor_point());
        sup_modulus(
            |z| self.eval(z).map_or(f64::NAN, |v| v.norm()),
            self.domain,
            &hints,
        )
        .value
    }

    /// The equality this witness is built for. Star kinds and polynomials:
    /// `||W||_inf <= C ||W||_2`. `rho_p`: `d(rho; p) <= 2 m_p`.
    pub fn sharpness(&self) -> Result<BoundReport> {
        let n = self.params.n.unwrap_or(0);
        let two_inf = NikolskiiParams::new(2.0, f64::INFINITY)?;
        let constant = match self.kind {
            WitnessKind::RhoP => {
                let p = self.params.p.expect("rho_p carries p");
                let spf = self.spf.as_ref().expect("rho_p carries its SPF");
                return Ok(spf_bounds(spf, p)?.upper);
            }
            WitnessKind::CircleStar | WitnessKind::AxisStar => {
                mu_exact_constant(&two_inf, &self.function, self.domain)?
            }
            WitnessKind::CircleDeltaStar => {
                let geometry = Geometry::Annulus {
                    radius: self.params.r.unwrap_or(1.0),
                    delta: self.params.delta.expect("delta star carries delta"),
                };
                geometric_constant(&two_inf, geometry, n)?
            }
            WitnessKind::SegmentJacobi => {
                geometric_constant(&two_inf, Geometry::SegmentPolynomial, n)?
            }
            WitnessKind::TrigStar => geometric_constant(&two_inf, Geometry::TrigStar, n)?,
            WitnessKind::CirclePolynomial => {
                let radius = self.params.r.unwrap_or(1.0);
                geometric_constant(&two_inf, Geometry::LaurentPolynomial { radius }, n)?
            }
        };
        let l2 = lp_norm(&self.function, self.domain, 2.0)?.value;
        Ok(BoundReport::new(self.sup(), constant * l2))
    }
}

fn need_n(params: &WitnessParams) -> Result<u32> {
    match params.n {
        Some(n) if n >= 1 => Ok(n),
        _ => Err(Error::BadParams("n >= 1 is required".into())),
    }
}

fn radius_of(params: &WitnessParams) -> Result<f64> {
    let r = params.r.unwrap_or(1.0);
    if r > 0.0 && r.is_finite() {
        Ok(r)
    } else {
        Err(Error::BadParams(format!("radius {r} must be positive")))
    }
}

/// `G(z) = (z - a) N(z) + rem`; returns the ascending coefficients of `N`.
fn deflate(coeffs: &[Complex64], a: Complex64) -> Vec<Complex64> {
    let d = coeffs.len() - 1;
    let mut out = vec![Complex64::new(0.0, 0.0); d];
    let mut carry = coeffs[d];
    for k in (1..=d).rev() {
        out[k - 1] = carry;
        carry = coeffs[k - 1] + a * carry;
    }
    out
}

fn sub(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let len = a.len().max(b.len());
    let zero = Complex64::new(0.0, 0.0);
    (0..len)
        .map(|i| a.get(i).copied().unwrap_or(zero) - b.get(i).copied().unwrap_or(zero))
        .collect()
}

fn repeated_roots(poles: &[Pole], map: impl Fn(Complex64) -> Complex64) -> Vec<Complex64> {
    poles
        .iter()
        .flat_map(|p| std::iter::repeat_n(map(p.location), p.multiplicity as usize))
        .collect()
}

fn circle_witness(
    kind: WitnessKind,
    poles: PoleSet,
    theta: f64,
    params: WitnessParams,
) -> Result<Witness> {
    let b = BlaschkeProduct::circle(poles)?;
    let Contour::Circle { radius: r } = b.contour() else {
        unreachable!("circle Blaschke product")
    };
    let phi = prescribed_phi(&b, 1, theta);
    let node = Complex64::from_polar(r, theta);
    let entries = b.poles().entries().to_vec();
    let one = Complex64::new(1.0, 0.0);

    // z P(z) - r e^{i phi} Q(z) with P = prod (r (z - z_k))^{n_k},
    // Q = prod (r^2 - z conj z_k)^{n_k}.
    let n = b.total() as i32;
    let p_poly: Vec<Complex64> = poly_from_roots(&repeated_roots(&entries, |z| z))
        .into_iter()
        .map(|c| c * r.powi(n))
        .collect();
    let mut q_poly = vec![one];
    for p in &entries {
        for _ in 0..p.multiplicity {
            q_poly = poly_mul(&q_poly, &[Complex64::new(r * r, 0.0), -p.location.conj()]);
        }
    }
    let z_p = poly_mul(&[Complex64::new(0.0, 0.0), one], &p_poly);
    let target: Vec<Complex64> = q_poly
        .iter()
        .map(|c| c * Complex64::from_polar(r, phi))
        .collect();
    let numerator = deflate(&sub(&z_p, &target), node);

    // Q = scale * prod_{z_k != 0} (z - r^2 / conj z_k)^{n_k}.
    let mut scale = one;
    let mut out_poles = Vec::new();
    for p in &entries {
        if p.location == Complex64::new(0.0, 0.0) {
            scale *= (r * r).powi(p.multiplicity as i32);
        } else {
            scale *= (-p.location.conj()).powu(p.multiplicity);
            out_poles.push(Pole::new(r * r / p.location.conj(), p.multiplicity));
        }
    }
    let function = RationalFunction::new(numerator.iter().map(|c| c / scale).collect(), out_poles)?;
    Ok(Witness {
        kind,
        domain: Domain::Circle { radius: r },
        function,
        spf: None,
        anchor: theta,
        phi: Some(phi),
        params,
        quotient: Some(Quotient { b, phi, node }),
    })
}

fn axis_witness(poles: PoleSet, params: WitnessParams) -> Result<Witness> {
    let b = BlaschkeProduct::axis(poles)?;
    let x1 = b.mu_sup().arg;
    let phi = prescribed_phi(&b, 1, x1);
    if is_infinite_phi(phi) {
        return Err(Error::BadParams(
            "the maximum of mu_* falls on phi = 0, where the witness loses a degree".into(),
        ));
    }
    let entries = b.poles().entries().to_vec();
    let p_poly = poly_from_roots(&repeated_roots(&entries, |z| z));
    let q_poly = poly_from_roots(&repeated_roots(&entries, |z| z.conj()));
    let target: Vec<Complex64> = q_poly
        .iter()
        .map(|c| c * Complex64::from_polar(1.0, phi))
        .collect();
    let node = Complex64::new(x1, 0.0);
    let numerator = deflate(&sub(&p_poly, &target), node);
    let out_poles = entries
        .iter()
        .map(|p| Pole::new(p.location.conj(), p.multiplicity))
        .collect();
    let function = RationalFunction::new(numerator, out_poles)?;
    Ok(Witness {
        kind: WitnessKind::AxisStar,
        domain: Domain::Axis,
        function,
        spf: None,
        anchor: x1,
        phi: Some(phi),
        params,
        quotient: Some(Quotient { b, phi, node }),
    })
}

/// `1 + 2 sum_{k=1}^n T_k(x)` in ascending powers of `x`.
fn jacobi_star(n: u32) -> Vec<Complex64> {
    let len = n as usize + 1;
    let mut prev = vec![0.0; len];
    prev[0] = 1.0;
    let mut sum = prev.clone();
    if n == 0 {
        return sum.into_iter().map(|c| Complex64::new(c, 0.0)).collect();
    }
    let mut cur = vec![0.0; len];
    cur[1] = 1.0;
    for k in 1..=n as usize {
        for (s, c) in sum.iter_mut().zip(&cur) {
            *s += 2.0 * c;
        }
        if k == n as usize {
            break;
        }
        let mut next = vec![0.0; len];
        for j in 0..len - 1 {
            next[j + 1] += 2.0 * cur[j];
        }
        for j in 0..len {
            next[j] -= prev[j];
        }
        prev = std::mem::replace(&mut cur, next);
    }
    sum.into_iter().map(|c| Complex64::new(c, 0.0)).collect()
}

pub fn extremal_witness(kind: WitnessKind, params: &WitnessParams) -> Result<Witness> {
    let params = params.clone();
    let plain = |domain: Domain, function: RationalFunction, params: WitnessParams| Witness {
        kind,
        domain,
        function,
        spf: None,
        anchor: 0.0,
        phi: None,
        params,
        quotient: None,
    };
    match kind {
        WitnessKind::CircleStar => {
            let r = radius_of(&params)?;
            if params.poles.is_empty() {
                return Err(Error::BadParams("circle_star needs the poles of B".into()));
            }
            let set = PoleSet::new(params.poles.iter().copied(), Region::Disc { radius: r })?;
            let theta = BlaschkeProduct::circle(set.clone())?.mu_sup().arg;
            circle_witness(kind, set, theta, params)
        }
        WitnessKind::CircleDeltaStar => {
            let n = need_n(&params)?;
            let r = radius_of(&params)?;
            let delta = params.delta.unwrap_or(f64::NAN);
            if !(delta > 0.0 && delta < 1.0) {
                return Err(Error::BadParams(format!(
                    "delta must lie in (0, 1), got {delta}"
                )));
            }
            let set = PoleSet::new(
                [Pole::new(Complex64::new(delta * r, 0.0), n)],
                Region::Disc { radius: r },
            )?;
            circle_witness(kind, set, 0.0, params)
        }
        WitnessKind::AxisStar => {
            if params.poles.is_empty() {
                return Err(Error::BadParams("axis_star needs the poles of B_*".into()));
            }
            let set = PoleSet::new(params.poles.iter().copied(), Region::UpperHalfPlane)?;
            axis_witness(set, params)
        }
        WitnessKind::RhoP => {
            let p = params.p.unwrap_or(f64::NAN);
            let spf = rho_p(p)?;
            let function = spf_to_rational(&spf);
            Ok(Witness {
                spf: Some(spf),
                ..plain(Domain::Axis, function, params)
            })
        }
        WitnessKind::SegmentJacobi => {
            let n = need_n(&params)?;
            let function = RationalFunction::polynomial(jacobi_star(n))?;
            Ok(Witness {
                anchor: 1.0,
                ..plain(Domain::Segment, function, params)
            })
        }
        WitnessKind::TrigStar => {
            let n = need_n(&params)?;
            let numerator = vec![Complex64::new(1.0, 0.0); 2 * n as usize + 2];
            let function =
                RationalFunction::new(numerator, vec![Pole::new(Complex64::new(0.0, 0.0), n)])?;
            Ok(plain(Domain::Circle { radius: 1.0 }, function, params))
        }
        WitnessKind::CirclePolynomial => {
            let n = need_n(&params)?;
            let r = radius_of(&params)?;
            let numerator = (0..=n)
                .map(|j| Complex64::new(r.powi((n - j) as i32), 0.0))
                .collect();
            let function = RationalFunction::polynomial(numerator)?;
            Ok(plain(Domain::Circle { radius: r }, function, params))
        }
    }
}

/// One equality claim checked numerically.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SharpnessCase {
    pub name: String,
    pub kind: WitnessKind,
    pub report: BoundReport,
    pub equality: bool,
}

impl SharpnessCase {
    fn new(name: String, kind: WitnessKind, report: BoundReport) -> Self {
        Self {
            name,
            kind,
            equality: report.is_equality(),
            report,
        }
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Fixed list of equality scenarios, in a fixed order.
pub fn sharpness_suite() -> Result<Vec<SharpnessCase>> {
    let mut out = Vec::new();
    fn push(out: &mut Vec<SharpnessCase>, name: String, w: Witness) -> Result<()> {
        let report = w.sharpness()?;
        out.push(SharpnessCase::new(name, w.kind, report));
        Ok(())
    }
    let star = |r: f64, poles: &[(Complex64, u32)]| WitnessParams {
        r: Some(r),
        poles: poles.iter().map(|(z, n)| Pole::new(*z, *n)).collect(),
        ..Default::default()
    };
    push(
        &mut out,
        "circle_star r=1".into(),
        extremal_witness(
            WitnessKind::CircleStar,
            &star(1.0, &[(c(0.4, 0.3), 1), (c(-0.5, 0.0), 2)]),
        )?,
    )?;
    push(
        &mut out,
        "circle_star r=2".into(),
        extremal_witness(
            WitnessKind::CircleStar,
            &star(2.0, &[(c(0.0, 0.8), 1), (c(1.0, -0.6), 1)]),
        )?,
    )?;
    for n in 1..=3 {
        for delta in [0.3, 0.5] {
            let params = WitnessParams {
                n: Some(n),
                delta: Some(delta),
                r: Some(1.0),
                ..Default::default()
            };
            push(
                &mut out,
                format!("circle_delta_star n={n} delta={delta}"),
                extremal_witness(WitnessKind::CircleDeltaStar, &params)?,
            )?;
        }
    }
    push(
        &mut out,
        "axis_star".into(),
        extremal_witness(
            WitnessKind::AxisStar,
            &star(1.0, &[(c(0.0, 1.0), 1), (c(1.0, 0.5), 2)]),
        )?,
    )?;
    for p in [2.0, 4.0] {
        let params = WitnessParams {
            p: Some(p),
            ..Default::default()
        };
        let w = extremal_witness(WitnessKind::RhoP, &params)?;
        let m = (p / 2.0) as u32;
        let pointwise = pointwise_bound(&w.function, Domain::Axis, m, 0.0)?;
        push(&mut out, format!("rho_p d p={p}"), w)?;
        out.push(SharpnessCase::new(
            format!("rho_p pointwise m={m}"),
            WitnessKind::RhoP,
            pointwise,
        ));
    }
    for n in 1..=3 {
        let params = WitnessParams {
            n: Some(n),
            ..Default::default()
        };
        push(
            &mut out,
            format!("segment_jacobi n={n}"),
            extremal_witness(WitnessKind::SegmentJacobi, &params)?,
        )?;
        push(
            &mut out,
            format!("trig_star n={n}"),
            extremal_witness(WitnessKind::TrigStar, &params)?,
        )?;
        let poly = WitnessParams {
            r: Some(1.5),
            ..params.clone()
        };
        push(
            &mut out,
            format!("circle_polynomial n={n} r=1.5"),
            extremal_witness(WitnessKind::CirclePolynomial, &poly)?,
        )?;
    }
    Ok(out)
}
