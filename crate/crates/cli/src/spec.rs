//! The problem description shared by command-line flags and `--from-json`.

use std::path::Path;

use ratquad::inequalities::{Geometry, WitnessKind};
use ratquad::json::{self, inf_as_string, RationalFunctionJson, SpfJson};
use ratquad::{Domain, Error, RationalFunction, Result, SimplePartialFraction, Weight};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum Command {
    Nodes,
    Integrate,
    Norm,
    Constant,
    Bound,
    Extremal,
    Suite,
    Sigma,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum DomainName {
    Circle,
    Axis,
    Semiaxis,
    Segment,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum WeightName {
    InvSqrt,
    Sqrt,
}

impl From<WeightName> for Weight {
    fn from(w: WeightName) -> Self {
        match w {
            WeightName::InvSqrt => Weight::InvSqrt,
            WeightName::Sqrt => Weight::Sqrt,
        }
    }
}

/// Which inequality `bound` checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum BoundKind {
    /// `|R(t)|^{2m} / weight <= C ||R||^{2m}` at `--at`.
    #[default]
    Pointwise,
    /// `||R||_q <= C ||R||_p` with the mu-exact or geometric constant.
    Nikolskii,
    /// Both branches of the alternative at `--at` for exponent `--d`.
    Alternative,
    /// `lower <= d(rho; p) <= 2 m_p` for a one-sided SPF.
    Spf,
    /// The mixed `(p, q)` bound for an SPF with poles anywhere.
    SpfMixed,
    /// The semiaxis bound for an SPF in the beam of half-angle `--alpha`.
    SpfSemiaxis,
}

/// Either a rational function or the pole list of a simple partial fraction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FunctionSpec {
    Rational(RationalFunctionJson),
    Spf(SpfJson),
}

impl FunctionSpec {
    /// Reads a JSON file, or parses the argument itself when it starts with `{`.
    pub fn load(arg: &str) -> Result<Self> {
        let text = if arg.trim_start().starts_with('{') {
            arg.to_string()
        } else {
            read(Path::new(arg))?
        };
        json::from_str(&text)
    }
}

pub fn read(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(path)
    }
    .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))
}

fn opt_inf<S: serde::Serializer>(v: &Option<f64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(x) => inf_as_string::serialize(x, s),
        None => s.serialize_none(),
    }
}

fn de_opt_inf<'de, D: serde::Deserializer<'de>>(
    d: D,
) -> std::result::Result<Option<f64>, D::Error> {
    #[derive(Deserialize)]
    struct Wrap(#[serde(with = "inf_as_string")] f64);
    Ok(Option::<Wrap>::deserialize(d)?.map(|w| w.0))
}

/// One request. Flags that a command does not read are ignored.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub command: Command,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<DomainName>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<WeightName>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub function: Option<FunctionSpec>,
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        serialize_with = "opt_inf",
        deserialize_with = "de_opt_inf"
    )]
    pub p: Option<f64>,
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        serialize_with = "opt_inf",
        deserialize_with = "de_opt_inf"
    )]
    pub q: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(default)]
    pub geometric: bool,
    #[serde(default)]
    pub compare_baranov: bool,
    /// Trigonometric polynomials `T_{n+1,n}` instead of the domain's default class.
    #[serde(default)]
    pub trig: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub which: Option<BoundKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub at: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<WitnessKind>,
    #[serde(default)]
    pub verify: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default)]
    pub csv: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<usize>,
}

fn missing(what: &str, command: Command) -> Error {
    Error::InvalidInput(format!("`{}` needs {what}", serde_plain(command)))
}

fn serde_plain(c: Command) -> String {
    serde_json::to_value(c)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}

impl ProblemSpec {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            domain: None,
            r: None,
            weight: None,
            m: None,
            phi: None,
            function: None,
            p: None,
            q: None,
            n: None,
            delta: None,
            geometric: false,
            compare_baranov: false,
            trig: false,
            which: None,
            at: None,
            d: None,
            alpha: None,
            kind: None,
            verify: false,
            seed: None,
            csv: false,
            sweep: None,
        }
    }

    /// Checks everything that does not need the engines: required fields,
    /// finiteness and ranges.
    pub fn validate(&self) -> Result<()> {
        let finite = |name: &str, v: Option<f64>| match v {
            Some(x) if !x.is_finite() => Err(Error::InvalidInput(format!(
                "{name} must be finite, got {x}"
            ))),
            _ => Ok(()),
        };
        finite("r", self.r)?;
        finite("phi", self.phi)?;
        finite("delta", self.delta)?;
        finite("at", self.at)?;
        finite("d", self.d)?;
        finite("alpha", self.alpha)?;
        if let Some(r) = self.r {
            if r <= 0.0 {
                return Err(Error::BadGeometry(format!(
                    "radius must be positive, got {r}"
                )));
            }
        }
        for (name, v) in [("p", self.p), ("q", self.q)] {
            if let Some(x) = v {
                if !(x > 0.0) {
                    return Err(Error::BadParams(format!(
                        "{name} must be positive, got {x}"
                    )));
                }
            }
        }
        if self.m == Some(0) {
            return Err(Error::InvalidInput("m must be >= 1".into()));
        }
        if self.sweep == Some(0) {
            return Err(Error::InvalidInput("sweep needs at least one phi".into()));
        }
        if self.weight == Some(WeightName::Sqrt) && self.domain != Some(DomainName::Semiaxis) {
            return Err(Error::InvalidInput(
                "weight applies to the semiaxis only".into(),
            ));
        }
        let c = self.command;
        let need_domain = matches!(
            c,
            Command::Nodes | Command::Integrate | Command::Norm | Command::Constant
        ) || (c == Command::Bound
            && matches!(
                self.which(),
                BoundKind::Pointwise | BoundKind::Nikolskii | BoundKind::Alternative
            ));
        if need_domain && self.domain.is_none() {
            return Err(missing("--domain", c));
        }
        match c {
            Command::Nodes | Command::Integrate | Command::Norm => {
                self.rational()?;
            }
            Command::Constant => {
                self.need_p(c)?;
                self.need_q(c)?;
                if self.geometric || self.compare_baranov {
                    self.n.ok_or_else(|| missing("--n", c))?;
                } else {
                    self.rational()?;
                }
                if self.compare_baranov && self.domain != Some(DomainName::Circle) {
                    return Err(Error::InvalidInput(
                        "the Baranov constant is for the circle".into(),
                    ));
                }
            }
            Command::Bound => match self.which() {
                BoundKind::Pointwise => {
                    self.rational()?;
                    self.at.ok_or_else(|| missing("--at", c))?;
                }
                BoundKind::Nikolskii => {
                    self.rational()?;
                    self.need_p(c)?;
                    self.need_q(c)?;
                }
                BoundKind::Alternative => {
                    self.rational()?;
                    self.at.ok_or_else(|| missing("--at", c))?;
                    self.d.ok_or_else(|| missing("--d", c))?;
                }
                BoundKind::Spf => {
                    self.spf()?;
                    self.need_p(c)?;
                }
                BoundKind::SpfMixed => {
                    self.spf()?;
                    self.need_p(c)?;
                    self.need_q(c)?;
                }
                BoundKind::SpfSemiaxis => {
                    self.spf()?;
                    self.alpha.ok_or_else(|| missing("--alpha", c))?;
                }
            },
            Command::Extremal => {
                self.kind.ok_or_else(|| missing("--kind", c))?;
            }
            Command::Sigma => {
                self.need_p(c)?;
                self.n.ok_or_else(|| missing("--n", c))?;
            }
            Command::Suite => {}
        }
        Ok(())
    }

    fn need_p(&self, c: Command) -> Result<f64> {
        self.p.ok_or_else(|| missing("--p", c))
    }

    fn need_q(&self, c: Command) -> Result<f64> {
        self.q.ok_or_else(|| missing("--q", c))
    }

    pub fn which(&self) -> BoundKind {
        self.which.unwrap_or_default()
    }

    pub fn m(&self) -> u32 {
        self.m.unwrap_or(1)
    }

    pub fn phi(&self) -> f64 {
        self.phi.unwrap_or(0.0)
    }

    pub fn p(&self) -> f64 {
        self.p.expect("validated")
    }

    pub fn q(&self) -> f64 {
        self.q.expect("validated")
    }

    pub fn radius(&self) -> f64 {
        self.r.unwrap_or(1.0)
    }

    pub fn domain(&self) -> Result<Domain> {
        Ok(
            match self
                .domain
                .ok_or_else(|| missing("--domain", self.command))?
            {
                DomainName::Circle => Domain::Circle {
                    radius: self.radius(),
                },
                DomainName::Axis => Domain::Axis,
                DomainName::Semiaxis => Domain::Semiaxis {
                    weight: self.weight.unwrap_or(WeightName::InvSqrt).into(),
                },
                DomainName::Segment => Domain::Segment,
            },
        )
    }

    pub fn rational(&self) -> Result<RationalFunction> {
        match &self.function {
            Some(FunctionSpec::Rational(f)) => f.to_function(),
            Some(FunctionSpec::Spf(_)) => Err(Error::InvalidInput(
                "expected a rational function {\"numerator\", \"poles\"}, got an SPF pole list"
                    .into(),
            )),
            None => Err(missing("--spec with a rational function", self.command)),
        }
    }

    pub fn spf(&self) -> Result<SimplePartialFraction> {
        match &self.function {
            Some(FunctionSpec::Spf(s)) => s.to_spf(),
            Some(FunctionSpec::Rational(_)) => Err(Error::InvalidInput(
                "expected an SPF pole list {\"poles\": [[re, im], ...]}".into(),
            )),
            None => Err(missing("--spec with an SPF pole list", self.command)),
        }
    }

    /// The closed-form geometry selected by the domain and flags.
    pub fn geometry(&self) -> Result<Geometry> {
        let delta = || {
            self.delta
                .ok_or_else(|| Error::InvalidInput("this geometry needs --delta".into()))
        };
        if self.trig {
            return Ok(Geometry::TrigStar);
        }
        Ok(
            match self
                .domain
                .ok_or_else(|| missing("--domain", self.command))?
            {
                DomainName::Circle => match self.delta {
                    Some(delta) => Geometry::Annulus {
                        radius: self.radius(),
                        delta,
                    },
                    None => Geometry::LaurentPolynomial {
                        radius: self.radius(),
                    },
                },
                DomainName::Axis => Geometry::Stripe { delta: delta()? },
                DomainName::Semiaxis => Geometry::Parabola { delta: delta()? },
                DomainName::Segment => match self.delta {
                    Some(delta) => Geometry::Ellipse { delta },
                    None => Geometry::SegmentPolynomial,
                },
            },
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn function_spec_forms() {
        let f = FunctionSpec::load(r#"{"numerator":[[1,0]],"poles":[{"re":0,"im":1,"mult":1}]}"#)
            .unwrap();
        assert!(matches!(f, FunctionSpec::Rational(_)));
        let s = FunctionSpec::load(r#"{"poles":[[0,1],[1,-2]]}"#).unwrap();
        assert!(matches!(s, FunctionSpec::Spf(_)));
        assert!(FunctionSpec::load(r#"{"poles":[[0,1]],"x":1}"#).is_err());
    }

    #[test]
    fn spec_json_round_trip() {
        let text = r#"{"command":"constant","domain":"circle","p":2,"q":"inf","n":2,"delta":0.5,"geometric":true}"#;
        let spec: ProblemSpec = json::from_str(text).unwrap();
        assert_eq!(spec.q, Some(f64::INFINITY));
        spec.validate().unwrap();
        let back: ProblemSpec = json::from_str(&json::to_string(&spec)).unwrap();
        assert_eq!(back, spec);
    }

    #[test]
    fn validation_rejects_before_computing() {
        let mut spec = ProblemSpec::new(Command::Norm);
        assert!(spec.validate().is_err());
        spec.domain = Some(DomainName::Axis);
        assert!(spec.validate().is_err());
        spec.function = Some(FunctionSpec::load(r#"{"poles":[[0,1]]}"#).unwrap());
        assert!(spec.validate().is_err());
        spec.function =
            Some(FunctionSpec::load(r#"{"numerator":[[1,0]],"poles":[{"re":0,"im":1}]}"#).unwrap());
        spec.validate().unwrap();
        spec.m = Some(0);
        assert!(spec.validate().is_err());
    }
}
