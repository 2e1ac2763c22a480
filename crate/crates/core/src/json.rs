//! JSON views of the engine types and a serializer that writes every float
//! with 17 significant digits.

use std::io;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::ser::{CompactFormatter, Formatter, PrettyFormatter, Serializer};

use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::notches::NotchSet;
use crate::quadrature::{Mode, OracleCheck, QuadratureResult};
use crate::ratfun::{ComplexPoint, Pole, RationalFunction, SimplePartialFraction};

/// Wraps a formatter so floats are written as `d.dddddddddddddddde±x`.
struct Digits17<F>(F);

macro_rules! forward {
    ($($name:ident($($arg:ident: $ty:ty),*);)*) => {
        $(
            fn $name<W: ?Sized + io::Write>(&mut self, w: &mut W $(, $arg: $ty)*) -> io::Result<()> {
                self.0.$name(w $(, $arg)*)
            }
        )*
    };
}

impl<F: Formatter> Formatter for Digits17<F> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        write!(w, "{:.16e}", value as f64)
    }

    forward! {
        begin_array();
        end_array();
        begin_array_value(first: bool);
        end_array_value();
        begin_object();
        end_object();
        begin_object_key(first: bool);
        end_object_key();
        begin_object_value();
        end_object_value();
    }
}

fn write_with<F: Formatter>(value: &impl Serialize, formatter: F) -> String {
    let mut out = Vec::new();
    let mut ser = Serializer::with_formatter(&mut out, Digits17(formatter));
    value
        .serialize(&mut ser)
        .expect("in-memory JSON serialization cannot fail");
    String::from_utf8(out).expect("serde_json writes UTF-8")
}

/// Compact JSON with 17 significant digits per float.
pub fn to_string(value: &impl Serialize) -> String {
    write_with(value, CompactFormatter)
}

/// Indented JSON with 17 significant digits per float.
pub fn to_string_pretty(value: &impl Serialize) -> String {
    write_with(value, PrettyFormatter::new())
}

pub fn from_str<T: for<'de> Deserialize<'de>>(s: &str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("JSON: {e}")))
}

/// Serde adapter writing `+inf` as the string `"inf"` and reading it back,
/// for quantities that are legitimately unbounded (`q = inf`, failed scores).
pub mod inf_as_string {
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if *v == f64::INFINITY {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(*v)
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Number(f64),
        Text(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Raw::deserialize(d)? {
            Raw::Number(v) => Ok(v),
            Raw::Text(t) => parse(&t).map_err(de::Error::custom),
        }
    }

    /// `"inf"` or a decimal number.
    pub fn parse(t: &str) -> Result<f64, String> {
        match t.trim() {
            "inf" | "Inf" | "infinity" | "+inf" => Ok(f64::INFINITY),
            other => other
                .parse()
                .map_err(|_| format!("expected a number or \"inf\", got `{other}`")),
        }
    }
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

fn complex(p: [f64; 2]) -> Complex64 {
    Complex64::new(p[0], p[1])
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PoleJson {
    pub re: f64,
    pub im: f64,
    #[serde(default = "one")]
    pub mult: u32,
}

fn one() -> u32 {
    1
}

/// `{"numerator": [[re, im], ...], "poles": [{"re", "im", "mult"}, ...]}`,
/// numerator coefficients in ascending powers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RationalFunctionJson {
    pub numerator: Vec<[f64; 2]>,
    #[serde(default)]
    pub poles: Vec<PoleJson>,
}

impl RationalFunctionJson {
    pub fn to_function(&self) -> Result<RationalFunction> {
        let poles = self
            .poles
            .iter()
            .map(|p| Pole::new(Complex64::new(p.re, p.im), p.mult))
            .collect();
        RationalFunction::new(self.numerator.iter().copied().map(complex).collect(), poles)
    }
}

impl From<&RationalFunction> for RationalFunctionJson {
    fn from(f: &RationalFunction) -> Self {
        Self {
            numerator: f.numerator().iter().copied().map(pair).collect(),
            poles: f
                .poles()
                .iter()
                .map(|p| PoleJson {
                    re: p.location.re,
                    im: p.location.im,
                    mult: p.multiplicity,
                })
                .collect(),
        }
    }
}

/// `{"poles": [[re, im], ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpfJson {
    pub poles: Vec<[f64; 2]>,
}

impl SpfJson {
    pub fn to_spf(&self) -> Result<SimplePartialFraction> {
        SimplePartialFraction::new(self.poles.iter().copied().map(complex).collect())
    }
}

impl From<&SimplePartialFraction> for SpfJson {
    fn from(rho: &SimplePartialFraction) -> Self {
        Self {
            poles: rho.poles().iter().copied().map(pair).collect(),
        }
    }
}

/// One node. Circle: `theta`. Axis: `x`, or `inf: true`. Semiaxis: `u` and
/// `x = u^2`. Segment: `theta` and `x = cos theta`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inf: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NotchSetJson {
    pub domain: Domain,
    pub phi: f64,
    pub m: u32,
    pub nodes: Vec<NodeJson>,
    /// Weight at each node; `null` at infinity.
    pub mu: Vec<Option<f64>>,
    pub residual: Vec<f64>,
}

impl From<&NotchSet> for NotchSetJson {
    fn from(set: &NotchSet) -> Self {
        let nodes = set
            .notches
            .iter()
            .zip(set.domain_points())
            .map(|(n, point)| {
                let empty = NodeJson {
                    theta: None,
                    u: None,
                    x: None,
                    inf: None,
                };
                match (set.domain, point) {
                    (_, ComplexPoint::Infinity) => NodeJson {
                        inf: Some(true),
                        ..empty
                    },
                    (Domain::Circle { .. }, _) => NodeJson {
                        theta: Some(n.param),
                        ..empty
                    },
                    (Domain::Axis, ComplexPoint::Finite(z)) => NodeJson {
                        x: Some(z.re),
                        ..empty
                    },
                    (Domain::Semiaxis { .. }, ComplexPoint::Finite(z)) => NodeJson {
                        u: Some(n.param),
                        x: Some(z.re),
                        ..empty
                    },
                    (Domain::Segment, ComplexPoint::Finite(z)) => NodeJson {
                        theta: Some(n.param),
                        x: Some(z.re),
                        ..empty
                    },
                }
            })
            .collect();
        Self {
            domain: set.domain,
            phi: set.phi,
            m: set.m,
            nodes,
            mu: set.notches.iter().map(|n| n.mu).collect(),
            residual: set.notches.iter().map(|n| n.residual).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleJson {
    pub value: [f64; 2],
    pub error_estimate: f64,
    pub discrepancy: f64,
    pub converged: bool,
}

impl From<&OracleCheck> for OracleJson {
    fn from(c: &OracleCheck) -> Self {
        Self {
            value: pair(c.value),
            error_estimate: c.error_estimate,
            discrepancy: c.discrepancy,
            converged: c.converged,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadratureResultJson {
    pub domain: Domain,
    pub mode: Mode,
    pub value: [f64; 2],
    pub contributions: Vec<[f64; 2]>,
    pub dropped_inf: bool,
    pub phi: f64,
    pub m: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleJson>,
}

impl From<&QuadratureResult> for QuadratureResultJson {
    fn from(q: &QuadratureResult) -> Self {
        Self {
            domain: q.domain(),
            mode: q.mode,
            value: pair(q.value),
            contributions: q.contributions.iter().copied().map(pair).collect(),
            dropped_inf: q.dropped_inf,
            phi: q.phi(),
            m: q.m(),
            oracle: q.oracle.as_ref().map(OracleJson::from),
        }
    }
}

/// `{"error": code, "message": text}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorJson {
    pub error: String,
    pub message: String,
}

impl From<&Error> for ErrorJson {
    fn from(e: &Error) -> Self {
        Self {
            error: e.code().to_string(),
            message: e.to_string(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notches::notches_axis;
    use crate::quadrature::norm_axis_2m;
    use crate::ratfun::reflect_axis;

    #[test]
    fn floats_have_17_digits() {
        assert_eq!(
            to_string(&[1.0, 0.1]),
            "[1.0000000000000000e0,1.0000000000000001e-1]"
        );
        assert_eq!(to_string(&f64::NAN), "null");
        let back: Vec<f64> = from_str(&to_string(&[std::f64::consts::PI, -2.5e-300])).unwrap();
        assert_eq!(back, vec![std::f64::consts::PI, -2.5e-300]);
    }

    #[test]
    fn rational_function_round_trip() {
        let text =
            r#"{"numerator":[[1,0],[0,2]],"poles":[{"re":0,"im":1,"mult":2},{"re":3,"im":-1}]}"#;
        let parsed: RationalFunctionJson = from_str(text).unwrap();
        let f = parsed.to_function().unwrap();
        assert_eq!(f.pole_count(), 3);
        assert_eq!(RationalFunctionJson::from(&f), parsed);
        assert!(from_str::<RationalFunctionJson>(r#"{"numerator":[[1,0]],"bogus":1}"#).is_err());
    }

    #[test]
    fn notch_and_quadrature_views() {
        let f = RationalFunction::from_poles(
            Complex64::new(1.0, 0.0),
            vec![Pole::new(Complex64::new(0.0, 1.0), 1)],
        )
        .unwrap();
        let set = notches_axis(&reflect_axis(&f).unwrap(), 1, 0.0).unwrap();
        let view = NotchSetJson::from(&set);
        assert_eq!(view.nodes[0].inf, Some(true));
        assert_eq!(to_string(&view.nodes[0]), r#"{"inf":true}"#);
        let q = norm_axis_2m(&f, 1, 1.0).unwrap();
        let text = to_string(&QuadratureResultJson::from(&q));
        let back: QuadratureResultJson = from_str(&text).unwrap();
        assert_eq!(to_string(&back), text);
    }
}
