//! Browser bindings. Every call takes plain numbers or a function JSON and
//! returns a JSON string; errors come back as the CLI's error JSON.

use std::f64::consts::TAU;

use ratquad::inequalities::{extremal_witness, WitnessKind, WitnessParams};
use ratquad::json::{self, ErrorJson, NotchSetJson, QuadratureResultJson, RationalFunctionJson};
use ratquad::notches::notches_circle;
use ratquad::quadrature::{quadrature, Mode};
use ratquad::ratfun::reflect_circle;
use ratquad::{tol, Complex64, Domain, Error, RationalFunction};
use serde_json::json;
use wasm_bindgen::prelude::*;

const PROFILE_SAMPLES: usize = 400;

fn fail(e: Error) -> String {
    json::to_string(&ErrorJson::from(&e))
}

fn parse(function: &str) -> Result<RationalFunction, Error> {
    json::from_str::<RationalFunctionJson>(function)?.to_function()
}

/// Nodes on `|z| = r` for one `phi`, plus the function's poles for drawing.
#[wasm_bindgen]
pub fn circle_nodes(function: &str, r: f64, m: u32, phi: f64) -> Result<String, String> {
    let run = || -> Result<String, Error> {
        let f = parse(function)?;
        let set = notches_circle(&reflect_circle(&f, r)?, m, phi)?;
        let poles: Vec<[f64; 2]> = f
            .poles()
            .iter()
            .map(|p| [p.location.re, p.location.im])
            .collect();
        Ok(json::to_string(&json!({
            "set": NotchSetJson::from(&set),
            "poles": poles,
        })))
    };
    run().map_err(fail)
}

/// Integral or `2m`-th power norm on the real axis, with the adaptive oracle
/// attached.
#[wasm_bindgen]
pub fn axis_quadrature(function: &str, m: u32, phi: f64, norm: bool) -> Result<String, String> {
    let run = || -> Result<String, Error> {
        let f = parse(function)?;
        let mode = if norm { Mode::Norm } else { Mode::Integral };
        let mut q = quadrature(&f, Domain::Axis, m, phi, mode)?;
        q.verify(&f, tol::ORACLE)?;
        let nodes: Vec<Option<f64>> = q
            .notches
            .notches
            .iter()
            .map(|n| n.point.finite().map(|z| z.re))
            .collect();
        Ok(json::to_string(&json!({
            "result": QuadratureResultJson::from(&q),
            "nodes": nodes,
        })))
    };
    run().map_err(fail)
}

/// An extremal function, its sharpness report and `|W|` sampled along the
/// contour (angle on the circle, `x` elsewhere).
#[wasm_bindgen]
pub fn extremal_profile(kind: &str, n: u32, delta: f64, p: f64) -> Result<String, String> {
    let run = || -> Result<String, Error> {
        let kind: WitnessKind = kind.parse()?;
        let params = WitnessParams {
            n: Some(n),
            delta: Some(delta),
            r: Some(1.0),
            p: Some(p),
            poles: Vec::new(),
        };
        let w = extremal_witness(kind, &params)?;
        let report = w.sharpness()?;
        let (lo, hi) = match w.domain {
            Domain::Circle { .. } => (0.0, TAU),
            Domain::Segment => (-1.0, 1.0),
            Domain::Semiaxis { .. } => (0.0, 20.0),
            Domain::Axis => (w.anchor - 10.0, w.anchor + 10.0),
        };
        let mut t = Vec::with_capacity(PROFILE_SAMPLES);
        let mut modulus = Vec::with_capacity(PROFILE_SAMPLES);
        for k in 0..PROFILE_SAMPLES {
            let s = lo + (hi - lo) * k as f64 / (PROFILE_SAMPLES - 1) as f64;
            let z = match w.domain {
                Domain::Circle { radius } => Complex64::from_polar(radius, s),
                _ => Complex64::new(s, 0.0),
            };
            t.push(s);
            modulus.push(w.eval(z)?.norm());
        }
        Ok(json::to_string(&json!({
            "kind": w.kind,
            "domain": w.domain,
            "anchor": w.anchor,
            "sharpness": report,
            "equality": report.is_equality(),
            "t": t,
            "abs": modulus,
        })))
    };
    run().map_err(fail)
}
