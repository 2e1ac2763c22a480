use std::f64::consts::TAU;
use std::fmt::Write as _;

use ratquad::inequalities::{
    alternative_check, baranov_constant, extremal_witness, geometric_constant, mu_exact_constant,
    nikolskii_check, pointwise_bound, sharpness_suite, sigma_comparison, spf_bounds,
    spf_mixed_bound, spf_semiaxis_bound, WitnessParams,
};
use ratquad::json::{NotchSetJson, QuadratureResultJson, RationalFunctionJson, SpfJson};
use ratquad::notches::{notches_axis, notches_circle, notches_segment, notches_semiaxis};
use ratquad::quadrature::{quadrature, Mode};
use ratquad::ratfun::{reflect_axis, reflect_circle, segment_lift, semiaxis_lift};
use ratquad::verify::{run_all, summary_line, VerifyConfig};
use ratquad::{tol, ComplexPoint, Domain, Error, NikolskiiParams, NotchSet, Result};

use crate::docs::{
    BoundDoc, ConstantDoc, ConstantVariant, Document, NamedReport, SigmaDoc, SuiteDoc, SweepDoc,
    WitnessDoc,
};
use crate::spec::{BoundKind, Command, FunctionSpec, ProblemSpec};

/// What a command prints.
pub enum Output {
    Json(Document),
    Csv(String),
}

pub fn run(spec: &ProblemSpec) -> Result<Output> {
    spec.validate()?;
    Ok(match spec.command {
        Command::Nodes => return nodes(spec),
        Command::Integrate => Output::Json(integrate(spec, Mode::Integral)?),
        Command::Norm => Output::Json(integrate(spec, Mode::Norm)?),
        Command::Constant => Output::Json(constant(spec)?),
        Command::Bound => Output::Json(bound(spec)?),
        Command::Extremal => Output::Json(extremal(spec)?),
        Command::Suite => Output::Json(suite(spec)?),
        Command::Sigma => {
            let (p, n) = (spec.p(), spec.n.expect("validated"));
            Output::Json(Document::Sigma(SigmaDoc {
                p,
                n,
                sigma: sigma_comparison(p, n)?,
            }))
        }
    })
}

fn notch_set(spec: &ProblemSpec, phi: f64) -> Result<NotchSet> {
    let f = spec.rational()?;
    let m = spec.m();
    match spec.domain()? {
        Domain::Circle { radius } => notches_circle(&reflect_circle(&f, radius)?, m, phi),
        Domain::Axis => notches_axis(&reflect_axis(&f)?, m, phi),
        Domain::Semiaxis { weight } => notches_semiaxis(&semiaxis_lift(&f)?, m, phi, weight),
        Domain::Segment => notches_segment(&segment_lift(&f)?, m, phi),
    }
}

fn csv_rows(out: &mut String, set: &NotchSet) {
    for (i, (n, point)) in set.notches.iter().zip(set.domain_points()).enumerate() {
        let (re, im) = match point {
            ComplexPoint::Finite(z) => (format!("{:.16e}", z.re), format!("{:.16e}", z.im)),
            ComplexPoint::Infinity => ("inf".into(), String::new()),
        };
        let mu = n.mu.map(|v| format!("{v:.16e}")).unwrap_or_default();
        let _ = writeln!(
            out,
            "{:.16e},{i},{:.16e},{re},{im},{mu},{:.16e}",
            set.phi, n.param, n.residual
        );
    }
}

/// Nodes at one `phi`, or `K` equally spaced `phi` in `[0, 2 pi)` with `--sweep K`.
fn nodes(spec: &ProblemSpec) -> Result<Output> {
    let phis: Vec<f64> = match spec.sweep {
        Some(k) => (0..k).map(|j| TAU * j as f64 / k as f64).collect(),
        None => vec![spec.phi()],
    };
    let sets = phis
        .iter()
        .map(|&phi| notch_set(spec, phi))
        .collect::<Result<Vec<_>>>()?;
    if spec.csv {
        let mut out = String::from("phi,index,param,re,im,mu,residual\n");
        for set in &sets {
            csv_rows(&mut out, set);
        }
        return Ok(Output::Csv(out));
    }
    let mut views: Vec<NotchSetJson> = sets.iter().map(NotchSetJson::from).collect();
    Ok(Output::Json(if spec.sweep.is_some() {
        Document::Sweep(SweepDoc { sets: views })
    } else {
        Document::NotchSet(views.remove(0))
    }))
}

fn integrate(spec: &ProblemSpec, mode: Mode) -> Result<Document> {
    let f = spec.rational()?;
    let mut q = quadrature(&f, spec.domain()?, spec.m(), spec.phi(), mode)?;
    if spec.verify {
        let check = q.verify(&f, tol::ORACLE)?;
        if !check.converged {
            return Err(Error::NoConvergence(format!(
                "oracle error estimate {:.3e} above tolerance",
                check.error_estimate
            )));
        }
    }
    Ok(Document::QuadratureResult(QuadratureResultJson::from(&q)))
}

fn constant(spec: &ProblemSpec) -> Result<Document> {
    let params = NikolskiiParams::new(spec.p(), spec.q())?;
    let domain = spec.domain()?;
    let (variant, geometry, value) = if spec.geometric {
        let g = spec.geometry()?;
        (
            ConstantVariant::Geometric,
            Some(g),
            geometric_constant(&params, g, spec.n.expect("validated"))?,
        )
    } else if spec.function.is_some() {
        (
            ConstantVariant::MuExact,
            None,
            mu_exact_constant(&params, &spec.rational()?, domain)?,
        )
    } else {
        let g = spec.geometry()?;
        (
            ConstantVariant::Geometric,
            Some(g),
            geometric_constant(&params, g, spec.n.expect("validated"))?,
        )
    };
    let baranov = if spec.compare_baranov {
        let delta = spec
            .delta
            .ok_or_else(|| Error::InvalidInput("--compare-baranov needs --delta".into()))?;
        Some(baranov_constant(
            &params,
            spec.radius(),
            spec.n.expect("validated"),
            delta,
        )?)
    } else {
        None
    };
    Ok(Document::Constant(ConstantDoc {
        domain,
        p: params.p,
        q: params.q,
        m_p: params.m_p,
        exponent: params.exponent(),
        variant,
        geometry,
        n: spec.n,
        value,
        ratio: baranov.map(|b| value / b),
        baranov,
    }))
}

fn named(name: &str, report: ratquad::BoundReport) -> NamedReport {
    NamedReport {
        name: name.to_string(),
        report,
    }
}

fn bound(spec: &ProblemSpec) -> Result<Document> {
    let which = spec.which();
    let mut d = None;
    let mut alternative = None;
    let reports = match which {
        BoundKind::Pointwise => {
            let f = spec.rational()?;
            vec![named(
                "pointwise",
                pointwise_bound(&f, spec.domain()?, spec.m(), spec.at.expect("validated"))?,
            )]
        }
        BoundKind::Nikolskii => {
            let f = spec.rational()?;
            let params = NikolskiiParams::new(spec.p(), spec.q())?;
            let domain = spec.domain()?;
            let c = if spec.geometric {
                let n = spec.n.unwrap_or_else(|| f.degree());
                geometric_constant(&params, spec.geometry()?, n)?
            } else {
                mu_exact_constant(&params, &f, domain)?
            };
            vec![named("nikolskii", nikolskii_check(&f, domain, &params, c)?)]
        }
        BoundKind::Alternative => {
            let f = spec.rational()?;
            let alt = alternative_check(
                &f,
                spec.domain()?,
                spec.m(),
                spec.d.expect("validated"),
                spec.at.expect("validated"),
            )?;
            alternative = Some(alt);
            Vec::new()
        }
        BoundKind::Spf => {
            let b = spf_bounds(&spec.spf()?, spec.p())?;
            d = Some(b.d.d);
            vec![named("upper", b.upper), named("lower", b.lower)]
        }
        BoundKind::SpfMixed => vec![named(
            "mixed",
            spf_mixed_bound(&spec.spf()?, spec.p(), spec.q())?,
        )],
        BoundKind::SpfSemiaxis => {
            let r = spf_semiaxis_bound(&spec.spf()?, spec.alpha.expect("validated"), spec.m())?;
            vec![
                named("sup_vs_s", r.sup_vs_s),
                named("s_vs_norm", r.s_vs_norm),
            ]
        }
    };
    let holds = reports.iter().all(|r| r.report.holds) && alternative.is_none_or(|a| a.holds());
    Ok(Document::BoundReport(BoundDoc {
        which,
        holds,
        reports,
        d,
        alternative,
    }))
}

fn extremal(spec: &ProblemSpec) -> Result<Document> {
    let poles = match &spec.function {
        Some(FunctionSpec::Rational(_)) => spec.rational()?.poles().to_vec(),
        Some(FunctionSpec::Spf(s)) => s
            .to_spf()?
            .poles()
            .iter()
            .map(|&z| ratquad::Pole::new(z, 1))
            .collect(),
        None => Vec::new(),
    };
    let params = WitnessParams {
        n: spec.n,
        delta: spec.delta,
        r: spec.r,
        p: spec.p,
        poles,
    };
    let w = extremal_witness(spec.kind.expect("validated"), &params)?;
    let report = w.sharpness()?;
    Ok(Document::Witness(WitnessDoc {
        kind: w.kind,
        domain: w.domain,
        anchor: w.anchor,
        phi: w.phi,
        function: RationalFunctionJson::from(&w.function),
        spf: w.spf.as_ref().map(SpfJson::from),
        equality: report.is_equality(),
        sharpness: report,
    }))
}

fn suite(spec: &ProblemSpec) -> Result<Document> {
    let seed = spec.seed.unwrap_or(0);
    let criteria = run_all(&VerifyConfig::with_seed(seed));
    for c in &criteria {
        eprintln!("{}", summary_line(c));
    }
    let sharpness = sharpness_suite()?;
    let passed = criteria.iter().all(|c| c.passed) && sharpness.iter().all(|c| c.equality);
    Ok(Document::Suite(SuiteDoc {
        seed,
        passed,
        criteria,
        sharpness,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc(spec: &ProblemSpec) -> Document {
        match run(spec).unwrap() {
            Output::Json(d) => d,
            Output::Csv(_) => panic!("expected JSON"),
        }
    }

    #[test]
    fn circle_constant_against_baranov() {
        let mut spec = ProblemSpec::new(Command::Constant);
        spec.domain = Some(crate::spec::DomainName::Circle);
        spec.p = Some(2.0);
        spec.q = Some(f64::INFINITY);
        spec.n = Some(2);
        spec.delta = Some(0.5);
        spec.geometric = true;
        spec.compare_baranov = true;
        let Document::Constant(c) = doc(&spec) else {
            panic!()
        };
        let pi = std::f64::consts::PI;
        assert!((c.value - (7.0 / (2.0 * pi)).sqrt()).abs() < 1e-15);
        assert!((c.baranov.unwrap() - (3.0 * 3.0 / (2.0 * pi)).sqrt()).abs() < 1e-15);
        assert!(c.ratio.unwrap() < 1.0);
    }

    #[test]
    fn rho_p_extremal() {
        let mut spec = ProblemSpec::new(Command::Extremal);
        spec.kind = Some(ratquad::inequalities::WitnessKind::RhoP);
        spec.p = Some(2.0);
        let Document::Witness(w) = doc(&spec) else {
            panic!()
        };
        assert!(w.equality);
        let pole = w.spf.unwrap().poles[0];
        assert!(pole[0].abs() < 1e-15 && (pole[1] - std::f64::consts::PI).abs() < 1e-12);
    }
}
