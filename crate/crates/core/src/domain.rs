use serde::{Deserialize, Serialize};

/// Weight of a semiaxis integral `int_0^inf f(x) w(x) dx`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Weight {
    /// `w(x) = 1 / sqrt(x)`
    InvSqrt,
    /// `w(x) = sqrt(x)`
    Sqrt,
}

/// Integration contour. Segment integrals carry the Chebyshev weight
/// `1 / sqrt(1 - x^2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Domain {
    Circle { radius: f64 },
    Axis,
    Semiaxis { weight: Weight },
    Segment,
}

impl Domain {
    pub fn name(&self) -> &'static str {
        match self {
            Domain::Circle { .. } => "circle",
            Domain::Axis => "axis",
            Domain::Semiaxis { .. } => "semiaxis",
            Domain::Segment => "segment",
        }
    }
}
