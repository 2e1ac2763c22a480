//! Randomized and fixed-case checks of every quadrature identity and
//! inequality in the crate, at the tolerances they are expected to meet.
//!
//! Each criterion yields a [`CriterionResult`] whose `worst` field is the
//! largest observed error divided by its allowance, so `worst <= 1` exactly
//! when every check passed. Randomness is seeded per instance, so results do
//! not depend on thread scheduling.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::blaschke::BlaschkeProduct;
use crate::domain::{Domain, Weight};
use crate::error::Result;
use crate::inequalities::{
    baranov_constant, extremal_witness, geometric_constant, lp_norm, pointwise_bound, rho_p,
    spf_bounds, spf_d, spf_mixed_bound, spf_semiaxis_bound, y0, BoundReport, Geometry,
    NikolskiiParams, WitnessKind, WitnessParams,
};
use crate::notches::{
    notches_axis, notches_circle, notches_segment, notches_semiaxis, prescribed_phi,
};
use crate::quadrature::{integrate_axis, integrate_semiaxis, norm_axis_2m, quadrature, Mode};
use crate::ratfun::{
    reflect_axis, reflect_circle, segment_lift, semiaxis_lift, spf_to_rational, ComplexPoint, Pole,
    RationalFunction, SimplePartialFraction,
};
use crate::tol;

/// Smallest distance between a random pole and the contour.
pub const MIN_POLE_DISTANCE: f64 = 0.05;
/// Largest total degree of a random rational function.
pub const MAX_DEGREE: u32 = 6;
/// Largest multiplicity of a random pole.
pub const MAX_MULTIPLICITY: u32 = 3;
/// Largest `m` drawn for random quadratures.
pub const MAX_M: u32 = 3;

pub const CRITERIA: u8 = 11;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Random rational functions per domain.
    pub instances: usize,
    /// Random `phi` values per instance for the invariance check.
    pub phis: usize,
    /// Random SPFs for the one- and two-sided SPF bounds.
    pub spfs: usize,
    /// Random beam SPFs per `alpha`.
    pub beams: usize,
    /// Random (pole set, target) pairs per domain.
    pub targets: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            instances: 200,
            phis: 8,
            spfs: 100,
            beams: 50,
            targets: 100,
        }
    }
}

impl VerifyConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub id: u8,
    pub title: String,
    pub checks: usize,
    pub failures: usize,
    /// Largest error over its allowance.
    #[serde(with = "crate::json::inf_as_string")]
    pub worst: f64,
    pub passed: bool,
    /// The first few failures.
    pub notes: Vec<String>,
}

const MAX_NOTES: usize = 5;

/// Running tally of one criterion.
#[derive(Debug, Default)]
struct Tally {
    checks: usize,
    failures: usize,
    worst: f64,
    notes: Vec<String>,
}

impl Tally {
    /// `score` is error over allowance; NaN counts as a failure.
    fn score(&mut self, score: f64, what: impl FnOnce() -> String) {
        self.checks += 1;
        if score > self.worst || score.is_nan() {
            self.worst = if score.is_nan() { f64::INFINITY } else { score };
        }
        if !(score <= 1.0) {
            self.fail(what());
        }
    }

    fn fail(&mut self, note: String) {
        self.failures += 1;
        self.worst = self.worst.max(1.0 + f64::EPSILON);
        if self.notes.len() < MAX_NOTES {
            self.notes.push(note);
        }
    }

    fn error(&mut self, context: &str, e: crate::error::Error) {
        self.checks += 1;
        self.worst = f64::INFINITY;
        self.failures += 1;
        if self.notes.len() < MAX_NOTES {
            self.notes.push(format!("{context}: {e}"));
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.checks += other.checks;
        self.failures += other.failures;
        self.worst = self.worst.max(other.worst);
        for n in other.notes {
            if self.notes.len() < MAX_NOTES {
                self.notes.push(n);
            }
        }
        self
    }

    fn finish(self, id: u8) -> CriterionResult {
        CriterionResult {
            id,
            title: title(id).to_string(),
            checks: self.checks,
            passed: self.failures == 0 && self.checks > 0,
            failures: self.failures,
            worst: self.worst,
            notes: self.notes,
        }
    }
}

/// Score of a bound check: `lhs / rhs`, above 1 only when the bound fails.
fn bound_score(r: &BoundReport) -> f64 {
    let ratio = r.lhs / r.rhs;
    match (r.holds, ratio.is_finite() && ratio >= 0.0) {
        (true, true) => ratio.min(1.0),
        (true, false) => 0.0,
        (false, true) => ratio.max(1.0 + f64::EPSILON),
        (false, false) => f64::INFINITY,
    }
}

fn relative(got: f64, want: f64, tol: f64) -> f64 {
    (got - want).abs() / (tol * want.abs())
}

pub fn title(id: u8) -> &'static str {
    match id {
        1 => "quadrature exactness and node counts",
        2 => "phi-invariance",
        3 => "known axis and semiaxis values",
        4 => "rho_p sharpness",
        5 => "circle delta-star sharpness",
        6 => "segment Jacobi sharpness",
        7 => "one-sided SPF bounds on d(rho; p)",
        8 => "mixed SPF bound",
        9 => "semiaxis SPF bound",
        10 => "circle constant below the Baranov constant",
        11 => "prescribed-node property",
        _ => "unknown criterion",
    }
}

/// Independent generator per (seed, instance, criterion); neighbouring seeds
/// share no instances.
fn rng_for(seed: u64, index: usize, stream: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&(index as u64).to_le_bytes());
    key[16..24].copy_from_slice(&stream.to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

fn uniform_complex(rng: &mut impl Rng, half_width: f64) -> Complex64 {
    Complex64::new(
        rng.gen_range(-half_width..half_width),
        rng.gen_range(-half_width..half_width),
    )
}

/// Multiplicities in `1..=MAX_MULTIPLICITY` summing to `total`.
fn split_multiplicities(rng: &mut impl Rng, total: u32) -> Vec<u32> {
    let mut left = total;
    let mut out = Vec::new();
    while left > 0 {
        let k = rng.gen_range(1..=left.min(MAX_MULTIPLICITY));
        out.push(k);
        left -= k;
    }
    out
}

/// Rejection-samples a point at least [`MIN_POLE_DISTANCE`] from the contour.
fn random_pole_location(rng: &mut impl Rng, domain: Domain) -> Complex64 {
    loop {
        let (z, distance) = match domain {
            Domain::Circle { radius } => {
                let z = Complex64::from_polar(
                    rng.gen_range(0.0..2.5 * radius),
                    rng.gen_range(0.0..TAU),
                );
                (z, (z.norm() - radius).abs())
            }
            Domain::Axis => {
                let z = uniform_complex(rng, 3.0);
                (z, z.im.abs())
            }
            Domain::Semiaxis { .. } => {
                let z = uniform_complex(rng, 3.0);
                (z, if z.re >= 0.0 { z.im.abs() } else { z.norm() })
            }
            Domain::Segment => {
                let z = Complex64::new(rng.gen_range(-2.5..2.5), rng.gen_range(-2.0..2.0));
                (z, (z - Complex64::new(z.re.clamp(-1.0, 1.0), 0.0)).norm())
            }
        };
        if distance >= MIN_POLE_DISTANCE {
            return z;
        }
    }
}

/// A random quadrature problem: function, contour and power.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub function: RationalFunction,
    pub domain: Domain,
    pub m: u32,
}

impl Instance {
    /// Number of nodes the quadrature must use.
    pub fn expected_nodes(&self) -> usize {
        let m = self.m as usize;
        let n = self.function.pole_count() as usize;
        let deg = self.function.degree() as usize;
        match self.domain {
            Domain::Circle { .. } => m * deg + 1,
            Domain::Axis => m * n,
            Domain::Semiaxis { .. } => 2 * m * n,
            Domain::Segment => 2 * deg * m + 1,
        }
    }
}

/// Random instance on a contour of the given kind: degree at most
/// [`MAX_DEGREE`], multiplicities at most [`MAX_MULTIPLICITY`], poles at least
/// [`MIN_POLE_DISTANCE`] from the contour, and `m` large enough for both the
/// integral and the norm to converge.
pub fn random_instance(rng: &mut impl Rng, kind: &str) -> Instance {
    let domain = match kind {
        "circle" => Domain::Circle {
            radius: rng.gen_range(0.5..2.0),
        },
        "axis" => Domain::Axis,
        "semiaxis" => Domain::Semiaxis {
            weight: if rng.gen_bool(0.5) {
                Weight::InvSqrt
            } else {
                Weight::Sqrt
            },
        },
        _ => Domain::Segment,
    };
    let improper_ok = matches!(domain, Domain::Circle { .. } | Domain::Segment);
    let n = if improper_ok && rng.gen_bool(0.15) {
        0
    } else {
        rng.gen_range(1..=MAX_DEGREE)
    };
    let numerator_degree = if improper_ok {
        rng.gen_range(if n == 0 { 1 } else { 0 }..=MAX_DEGREE)
    } else {
        rng.gen_range(0..n)
    };
    let poles = split_multiplicities(rng, n)
        .into_iter()
        .map(|k| Pole::new(random_pole_location(rng, domain), k))
        .collect();
    let mut numerator: Vec<Complex64> = (0..=numerator_degree)
        .map(|_| uniform_complex(rng, 1.0))
        .collect();
    let lead = numerator.last_mut().expect("numerator is nonempty");
    if lead.norm() < 0.1 {
        *lead += 0.5;
    }
    let function = RationalFunction::new(numerator, poles).expect("generated function is valid");
    let gap = function.decay_order().max(1) as u32;
    let needs_decay = matches!(
        domain,
        Domain::Axis
            | Domain::Semiaxis {
                weight: Weight::Sqrt
            }
    );
    let m_min = if needs_decay { 2u32.div_ceil(gap) } else { 1 };
    let m = rng.gen_range(m_min..=MAX_M);
    Instance {
        function,
        domain,
        m,
    }
}

const DOMAIN_KINDS: [&str; 4] = ["circle", "axis", "semiaxis", "segment"];

fn instances(config: &VerifyConfig) -> Vec<(usize, Instance)> {
    (0..DOMAIN_KINDS.len() * config.instances)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng_for(config.seed, i, 1);
            (
                i,
                random_instance(&mut rng, DOMAIN_KINDS[i / config.instances]),
            )
        })
        .collect()
}

fn scaled(f: &RationalFunction, s: f64) -> RationalFunction {
    RationalFunction::new(
        f.numerator().iter().map(|c| c * s).collect(),
        f.poles().to_vec(),
    )
    .expect("scaling keeps a valid function")
}

/// Rescales `f` so the quadrature contributions have total modulus one.
fn normalized(inst: &Instance, mode: Mode, phi: f64) -> Result<RationalFunction> {
    let q = quadrature(&inst.function, inst.domain, inst.m, phi, mode)?;
    let k = match mode {
        Mode::Integral => inst.m,
        Mode::Norm => 2 * inst.m,
    };
    let mag = q.magnitude();
    Ok(if mag > 0.0 && mag.is_finite() {
        scaled(&inst.function, mag.powf(-1.0 / k as f64))
    } else {
        inst.function.clone()
    })
}

fn describe(i: usize, inst: &Instance, mode: Mode) -> String {
    format!(
        "instance {i} ({}, m={}, {:?}, poles {:?})",
        inst.domain.name(),
        inst.m,
        mode,
        inst.function
            .poles()
            .iter()
            .map(|p| (p.location, p.multiplicity))
            .collect::<Vec<_>>()
    )
}

fn criterion_exactness(config: &VerifyConfig) -> Tally {
    instances(config)
        .into_par_iter()
        .map(|(i, inst)| {
            let mut t = Tally::default();
            let phi = rng_for(config.seed, i, 2).gen_range(0.0..TAU);
            for mode in [Mode::Integral, Mode::Norm] {
                let run = || -> Result<_> {
                    let f = normalized(&inst, mode, phi)?;
                    let mut q = quadrature(&f, inst.domain, inst.m, phi, mode)?;
                    let check = q.verify(&f, tol::ORACLE)?;
                    Ok((q.notches.len(), check))
                };
                match run() {
                    Ok((nodes, check)) => {
                        let want = inst.expected_nodes();
                        if nodes != want {
                            t.fail(format!(
                                "{}: {nodes} nodes, expected {want}",
                                describe(i, &inst, mode)
                            ));
                        }
                        if !check.converged {
                            t.fail(format!(
                                "{}: oracle did not converge",
                                describe(i, &inst, mode)
                            ));
                        }
                        let allowed = 1e-8 * (1.0 + check.value.norm());
                        t.score(check.discrepancy / allowed, || {
                            format!(
                                "{}: discrepancy {:.3e}",
                                describe(i, &inst, mode),
                                check.discrepancy
                            )
                        });
                    }
                    Err(e) => t.error(&describe(i, &inst, mode), e),
                }
            }
            t
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Tally::default(), Tally::merge)
}

fn criterion_invariance(config: &VerifyConfig) -> Tally {
    instances(config)
        .into_par_iter()
        .map(|(i, inst)| {
            let mut t = Tally::default();
            let mut rng = rng_for(config.seed, i, 3);
            let phis: Vec<f64> = (0..config.phis).map(|_| rng.gen_range(0.0..TAU)).collect();
            for mode in [Mode::Integral, Mode::Norm] {
                let values = phis
                    .iter()
                    .map(|&phi| quadrature(&inst.function, inst.domain, inst.m, phi, mode))
                    .collect::<Result<Vec<_>>>();
                match values {
                    Ok(qs) => {
                        let scale = qs
                            .iter()
                            .map(|q| q.value.norm().max(q.magnitude()))
                            .fold(0.0, f64::max);
                        let spread = qs
                            .iter()
                            .flat_map(|a| qs.iter().map(move |b| (a.value - b.value).norm()))
                            .fold(0.0, f64::max);
                        let score = if scale > 0.0 {
                            spread / (1e-9 * scale)
                        } else {
                            0.0
                        };
                        t.score(score, || {
                            format!(
                                "{}: relative spread {:.3e}",
                                describe(i, &inst, mode),
                                spread / scale
                            )
                        });
                    }
                    Err(e) => t.error(&describe(i, &inst, mode), e),
                }
            }
            t
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Tally::default(), Tally::merge)
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn single_pole(z: Complex64) -> RationalFunction {
    RationalFunction::from_poles(c(1.0, 0.0), vec![Pole::new(z, 1)]).expect("single pole is valid")
}

fn criterion_known_values() -> Tally {
    let mut t = Tally::default();
    let f = single_pole(c(0.0, 1.0));
    let g = single_pole(c(-1.0, 0.0));
    for phi in [0.0, 0.5, 1.0, PI, 5.0] {
        let cases = [
            ("axis L2", norm_axis_2m(&f, 1, phi), PI),
            ("axis L4", norm_axis_2m(&f, 2, phi), PI / 2.0),
            (
                "semiaxis 1/((x+1) sqrt x)",
                integrate_semiaxis(&g, 1, phi, Weight::InvSqrt),
                PI,
            ),
        ];
        for (name, got, want) in cases {
            match got {
                Ok(q) => {
                    let err = (q.value - c(want, 0.0)).norm();
                    t.score(err / 1e-10, || {
                        format!("{name} phi={phi}: {} vs {want}", q.value)
                    });
                }
                Err(e) => t.error(name, e),
            }
        }
    }
    // A function that is integrable but not of the norm form.
    let lorentz = RationalFunction::from_poles(
        c(1.0, 0.0),
        vec![Pole::new(c(0.0, 1.0), 1), Pole::new(c(0.0, -1.0), 1)],
    )
    .expect("valid");
    match integrate_axis(&lorentz, 1, 0.25) {
        Ok(q) => t.score((q.value - c(PI, 0.0)).norm() / 1e-10, || {
            format!("axis 1/(1+x^2): {}", q.value)
        }),
        Err(e) => t.error("axis 1/(1+x^2)", e),
    }
    t
}

fn criterion_rho_p() -> Tally {
    let mut t = Tally::default();
    let want = [(2.0, PI), (4.0, 0.5 * (4.0 * PI).cbrt())];
    for (p, v) in want {
        match y0(p) {
            Ok(y) => t.score((y - v).abs() / 1e-12, || {
                format!("y0({p}) = {y}, expected {v}")
            }),
            Err(e) => t.error("y0", e),
        }
    }
    for p in [2.0, 4.0] {
        let run = || -> Result<(f64, BoundReport)> {
            let f = spf_to_rational(&rho_p(p)?);
            let norm = lp_norm(&f, Domain::Axis, p)?.value;
            let m = (p / 2.0) as u32;
            Ok((norm, pointwise_bound(&f, Domain::Axis, m, 0.0)?))
        };
        match run() {
            Ok((norm, report)) => {
                t.score((norm - 1.0).abs() / 1e-8, || {
                    format!("||rho({p})||_{p} = {norm}")
                });
                t.score(report.relative_gap() / tol::SHARPNESS, || {
                    format!("pointwise at x=0, p={p}: {} vs {}", report.lhs, report.rhs)
                });
            }
            Err(e) => t.error(&format!("rho_p p={p}"), e),
        }
    }
    t
}

fn criterion_delta_star() -> Tally {
    let mut t = Tally::default();
    for n in 1..=3 {
        for delta in [0.3, 0.5] {
            let params = WitnessParams {
                n: Some(n),
                delta: Some(delta),
                r: Some(1.0),
                ..Default::default()
            };
            match extremal_witness(WitnessKind::CircleDeltaStar, &params)
                .and_then(|w| w.sharpness())
            {
                Ok(r) => t.score(r.relative_gap() / tol::SHARPNESS, || {
                    format!("n={n} delta={delta}: sup {} vs C||R||_2 {}", r.lhs, r.rhs)
                }),
                Err(e) => t.error(&format!("n={n} delta={delta}"), e),
            }
        }
    }
    t
}

fn criterion_segment() -> Tally {
    let mut t = Tally::default();
    for n in 1..=3u32 {
        let params = WitnessParams {
            n: Some(n),
            ..Default::default()
        };
        let run = || -> Result<(f64, BoundReport)> {
            let w = extremal_witness(WitnessKind::SegmentJacobi, &params)?;
            Ok((w.eval(c(1.0, 0.0))?.norm(), w.sharpness()?))
        };
        match run() {
            Ok((at_one, r)) => {
                let want = (2 * n + 1) as f64;
                let exact = if at_one == want { 0.0 } else { f64::INFINITY };
                t.score(exact, || format!("|P*_{n}(1)| = {at_one}, expected {want}"));
                t.score(r.relative_gap() / tol::SHARPNESS, || {
                    format!("n={n}: sup {} vs C||P||_2 {}", r.lhs, r.rhs)
                });
            }
            Err(e) => t.error(&format!("n={n}"), e),
        }
    }
    t
}

/// Random SPF with `n` poles at least [`MIN_POLE_DISTANCE`] from the axis;
/// `upper` poles go above the axis, the rest below.
fn random_spf(rng: &mut impl Rng, n: usize, upper: usize) -> SimplePartialFraction {
    let poles = (0..n)
        .map(|k| {
            let y = rng.gen_range(MIN_POLE_DISTANCE..3.0);
            c(rng.gen_range(-3.0..3.0), if k < upper { y } else { -y })
        })
        .collect();
    SimplePartialFraction::new(poles).expect("nonempty")
}

fn criterion_spf_bounds(config: &VerifyConfig) -> Tally {
    let mut t = Tally::default();
    for (p, want) in [(2.0, 2.0), (4.0, 4.0)] {
        match rho_p(p).and_then(|rho| spf_d(&rho, p)) {
            Ok(d) => t.score(relative(d.d, want, 1e-8), || {
                format!("d(rho_{p}; {p}) = {}", d.d)
            }),
            Err(e) => t.error(&format!("d(rho_{p})"), e),
        }
    }
    let random = (0..config.spfs)
        .into_par_iter()
        .map(|i| {
            let mut t = Tally::default();
            let mut rng = rng_for(config.seed, i, 7);
            let n = rng.gen_range(1..=5);
            let upper = if rng.gen_bool(0.5) { n } else { 0 };
            let rho = random_spf(&mut rng, n, upper);
            for p in [2.0, 3.0, 4.0, 6.0] {
                match spf_bounds(&rho, p) {
                    Ok(b) => {
                        t.score(bound_score(&b.upper), || {
                            format!("spf {i} p={p}: d = {} > {}", b.d.d, b.upper.rhs)
                        });
                        t.score(bound_score(&b.lower), || {
                            format!("spf {i} p={p}: d = {} < {}", b.d.d, b.lower.lhs)
                        });
                    }
                    Err(e) => t.error(&format!("spf {i} p={p} poles {:?}", rho.poles()), e),
                }
            }
            t
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Tally::default(), Tally::merge);
    t.merge(random)
}

fn criterion_mixed(config: &VerifyConfig) -> Tally {
    (0..config.spfs)
        .into_par_iter()
        .map(|i| {
            let mut t = Tally::default();
            let mut rng = rng_for(config.seed, i, 8);
            let n = rng.gen_range(2..=5);
            let upper = rng.gen_range(1..n);
            let rho = random_spf(&mut rng, n, upper);
            for (p, q) in [(2.0, 4.0), (2.0, f64::INFINITY), (3.0, 6.0)] {
                match spf_mixed_bound(&rho, p, q) {
                    Ok(r) => t.score(bound_score(&r), || {
                        format!("spf {i} (p,q)=({p},{q}): {} > {}", r.lhs, r.rhs)
                    }),
                    Err(e) => t.error(&format!("spf {i} (p,q)=({p},{q})"), e),
                }
            }
            t
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Tally::default(), Tally::merge)
}

fn criterion_beam(config: &VerifyConfig) -> Tally {
    let alphas = [0.2, 0.7];
    (0..alphas.len() * config.beams)
        .into_par_iter()
        .map(|i| {
            let mut t = Tally::default();
            let alpha = alphas[i / config.beams];
            let mut rng = rng_for(config.seed, i, 9);
            let n = rng.gen_range(1..=5);
            let poles = (0..n)
                .map(|_| {
                    -Complex64::from_polar(
                        rng.gen_range(0.1..3.0),
                        rng.gen_range(-0.95 * alpha..0.95 * alpha),
                    )
                })
                .collect();
            let rho = SimplePartialFraction::new(poles).expect("nonempty");
            for m in [1, 2] {
                match spf_semiaxis_bound(&rho, alpha, m) {
                    Ok(r) => {
                        t.score(bound_score(&r.sup_vs_s), || {
                            format!("beam {i} alpha={alpha} m={m}: sup vs S")
                        });
                        t.score(bound_score(&r.s_vs_norm), || {
                            format!("beam {i} alpha={alpha} m={m}: S vs norm")
                        });
                    }
                    Err(e) => t.error(&format!("beam {i} alpha={alpha} m={m}"), e),
                }
            }
            t
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Tally::default(), Tally::merge)
}

fn criterion_constants() -> Tally {
    let mut t = Tally::default();
    for p in [1.0, 2.0, 4.0] {
        for q in [2.0, 4.0, f64::INFINITY] {
            if q <= p {
                continue;
            }
            let params = NikolskiiParams::new(p, q).expect("p < q");
            for n in 1..=6 {
                for delta in [0.1, 0.5, 0.9] {
                    let geometry = Geometry::Annulus { radius: 1.0, delta };
                    let ours = geometric_constant(&params, geometry, n);
                    let theirs = baranov_constant(&params, 1.0, n, delta);
                    match ours.and_then(|a| theirs.map(|b| (a, b))) {
                        Ok((a, b)) => t.score(bound_score(&BoundReport::new(a, b)), || {
                            format!("p={p} q={q} n={n} delta={delta}: {a} > {b}")
                        }),
                        Err(e) => t.error(&format!("p={p} q={q} n={n} delta={delta}"), e),
                    }
                }
            }
        }
    }
    t
}

/// Distance from `target` to the nearest node obtained with the prescribed `phi`.
fn prescribed_miss(inst: &Instance, rng: &mut impl Rng) -> Result<(f64, f64)> {
    let f = &inst.function;
    let m = inst.m;
    let nearest = |points: Vec<ComplexPoint>, target: Complex64| {
        points
            .into_iter()
            .filter_map(ComplexPoint::finite)
            .map(|z| (z - target).norm())
            .fold(f64::INFINITY, f64::min)
    };
    Ok(match inst.domain {
        Domain::Circle { radius } => {
            let theta = rng.gen_range(0.0..TAU);
            let poles = reflect_circle(f, radius)?;
            let phi = prescribed_phi(&BlaschkeProduct::circle(poles.clone())?, m, theta);
            let target = Complex64::from_polar(radius, theta);
            (
                nearest(notches_circle(&poles, m, phi)?.domain_points(), target),
                radius,
            )
        }
        Domain::Axis => {
            let x = rng.gen_range(-4.0..4.0);
            let poles = reflect_axis(f)?;
            let phi = prescribed_phi(&BlaschkeProduct::axis(poles.clone())?, m, x);
            (
                nearest(notches_axis(&poles, m, phi)?.domain_points(), c(x, 0.0)),
                x.abs(),
            )
        }
        Domain::Semiaxis { weight } => {
            let x: f64 = rng.gen_range(0.0..4.0);
            let poles = semiaxis_lift(f)?;
            let phi = prescribed_phi(&BlaschkeProduct::axis(poles.clone())?, m, x.sqrt());
            (
                nearest(
                    notches_semiaxis(&poles, m, phi, weight)?.domain_points(),
                    c(x, 0.0),
                ),
                x,
            )
        }
        Domain::Segment => {
            let theta = rng.gen_range(0.0..PI);
            let poles = segment_lift(f)?;
            let phi = prescribed_phi(&BlaschkeProduct::circle(poles.clone())?, m, theta);
            let x = theta.cos();
            (
                nearest(notches_segment(&poles, m, phi)?.domain_points(), c(x, 0.0)),
                x.abs(),
            )
        }
    })
}

fn criterion_prescribed(config: &VerifyConfig) -> Tally {
    (0..DOMAIN_KINDS.len() * config.targets)
        .into_par_iter()
        .map(|i| {
            let mut t = Tally::default();
            let mut rng = rng_for(config.seed, i, 11);
            let inst = random_instance(&mut rng, DOMAIN_KINDS[i / config.targets]);
            match prescribed_miss(&inst, &mut rng) {
                Ok((miss, size)) => t.score(miss / (1e-10 * size.max(1.0)), || {
                    format!(
                        "{}: nearest node {miss:.3e} away",
                        describe(i, &inst, Mode::Integral)
                    )
                }),
                Err(e) => t.error(&describe(i, &inst, Mode::Integral), e),
            }
            t
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Tally::default(), Tally::merge)
}

/// Runs one criterion (`1..=11`).
pub fn run_criterion(id: u8, config: &VerifyConfig) -> CriterionResult {
    let tally = match id {
        1 => criterion_exactness(config),
        2 => criterion_invariance(config),
        3 => criterion_known_values(),
        4 => criterion_rho_p(),
        5 => criterion_delta_star(),
        6 => criterion_segment(),
        7 => criterion_spf_bounds(config),
        8 => criterion_mixed(config),
        9 => criterion_beam(config),
        10 => criterion_constants(),
        11 => criterion_prescribed(config),
        _ => {
            let mut t = Tally::default();
            t.fail(format!("no criterion {id}"));
            t
        }
    };
    tally.finish(id)
}

/// All criteria, concurrently, in order.
pub fn run_all(config: &VerifyConfig) -> Vec<CriterionResult> {
    (1..=CRITERIA)
        .into_par_iter()
        .map(|id| run_criterion(id, config))
        .collect()
}

/// `PASS`/`FAIL` line for one criterion.
pub fn summary_line(r: &CriterionResult) -> String {
    format!(
        "{} criterion {:>2} ({}): {} checks, {} failures, worst {:.3e}",
        if r.passed { "PASS" } else { "FAIL" },
        r.id,
        r.title,
        r.checks,
        r.failures,
        r.worst
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_respect_limits() {
        let mut rng = rng_for(5, 0, 1);
        for kind in DOMAIN_KINDS {
            for _ in 0..200 {
                let inst = random_instance(&mut rng, kind);
                let f = &inst.function;
                assert!(f.degree() <= MAX_DEGREE && f.degree() >= 1);
                assert!(f.poles().iter().all(|p| p.multiplicity <= MAX_MULTIPLICITY));
                assert!((1..=MAX_M).contains(&inst.m));
                for p in f.poles() {
                    let z = p.location;
                    let d = match inst.domain {
                        Domain::Circle { radius } => (z.norm() - radius).abs(),
                        Domain::Axis => z.im.abs(),
                        Domain::Semiaxis { .. } => {
                            if z.re >= 0.0 {
                                z.im.abs()
                            } else {
                                z.norm()
                            }
                        }
                        Domain::Segment => (z - c(z.re.clamp(-1.0, 1.0), 0.0)).norm(),
                    };
                    assert!(d >= MIN_POLE_DISTANCE);
                }
                assert!(
                    quadrature(f, inst.domain, inst.m, 1.0, Mode::Integral).is_ok(),
                    "{inst:?}"
                );
            }
        }
    }

    #[test]
    fn instances_are_reproducible() {
        let config = VerifyConfig {
            instances: 3,
            ..VerifyConfig::with_seed(9)
        };
        assert_eq!(instances(&config), instances(&config));
        let other = VerifyConfig {
            instances: 3,
            ..VerifyConfig::with_seed(10)
        };
        assert_ne!(instances(&config), instances(&other));
    }

    #[test]
    fn bound_scores() {
        assert_eq!(bound_score(&BoundReport::new(1.0, 2.0)), 0.5);
        assert!(bound_score(&BoundReport::new(2.0, 1.0)) > 1.0);
        assert_eq!(bound_score(&BoundReport::new(-1.0, 0.0)), 0.0);
    }

    #[test]
    fn fixed_criteria_pass() {
        let config = VerifyConfig::default();
        for id in [3, 4, 5, 6, 10] {
            let r = run_criterion(id, &config);
            assert!(r.passed, "{}: {:?}", summary_line(&r), r.notes);
        }
    }

    #[test]
    fn small_random_run() {
        let config = VerifyConfig {
            seed: 1,
            instances: 5,
            phis: 3,
            spfs: 5,
            beams: 3,
            targets: 5,
        };
        for id in [1, 2, 7, 8, 9, 11] {
            let r = run_criterion(id, &config);
            assert!(r.checks > 0);
            assert!(r.passed, "{}: {:?}", summary_line(&r), r.notes);
        }
    }
}
