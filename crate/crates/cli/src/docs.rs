//! Everything the binary prints, tagged by `"type"` so that any output can be
//! fed back through `--from-json`.

use ratquad::inequalities::{Alternative, Geometry, SharpnessCase, Sigma, WitnessKind};
use ratquad::json::{
    inf_as_string, NotchSetJson, QuadratureResultJson, RationalFunctionJson, SpfJson,
};
use ratquad::verify::CriterionResult;
use ratquad::{BoundReport, Domain};
use serde::{Deserialize, Serialize};

use crate::spec::BoundKind;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Document {
    NotchSet(NotchSetJson),
    Sweep(SweepDoc),
    QuadratureResult(QuadratureResultJson),
    Constant(ConstantDoc),
    BoundReport(BoundDoc),
    Witness(WitnessDoc),
    Suite(SuiteDoc),
    Sigma(SigmaDoc),
}

impl Document {
    /// Whether the document records a violated bound or failed criterion.
    pub fn is_violation(&self) -> bool {
        match self {
            Document::BoundReport(b) => !b.holds,
            Document::Suite(s) => !s.passed,
            _ => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepDoc {
    pub sets: Vec<NotchSetJson>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstantVariant {
    MuExact,
    Geometric,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstantDoc {
    pub domain: Domain,
    pub p: f64,
    #[serde(with = "inf_as_string")]
    pub q: f64,
    pub m_p: u32,
    pub exponent: f64,
    pub variant: ConstantVariant,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub geometry: Option<Geometry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    pub value: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub baranov: Option<f64>,
    /// `value / baranov`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ratio: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedReport {
    pub name: String,
    #[serde(flatten)]
    pub report: BoundReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundDoc {
    pub which: BoundKind,
    pub holds: bool,
    pub reports: Vec<NamedReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alternative: Option<Alternative>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessDoc {
    pub kind: WitnessKind,
    pub domain: Domain,
    /// `theta` on the circle, `x` elsewhere.
    pub anchor: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<f64>,
    pub function: RationalFunctionJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spf: Option<SpfJson>,
    pub sharpness: BoundReport,
    pub equality: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteDoc {
    pub seed: u64,
    pub passed: bool,
    pub criteria: Vec<CriterionResult>,
    pub sharpness: Vec<SharpnessCase>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SigmaDoc {
    pub p: f64,
    pub n: u32,
    #[serde(flatten)]
    pub sigma: Sigma,
}
