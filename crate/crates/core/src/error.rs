use thiserror::Error;

/// Errors raised by the engines. Every variant has a stable machine-readable
/// code (see [`Error::code`]) used by the CLI's error JSON.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("evaluation point {re}{im:+}i coincides with a pole")]
    EvalAtPole { re: f64, im: f64 },

    #[error("pole at {re}{im:+}i lies on the integration contour")]
    PoleOnContour { re: f64, im: f64 },

    #[error("rational function is not proper (numerator degree {num} >= pole count {den})")]
    NotProper { num: usize, den: usize },

    #[error("pole at {re}{im:+}i lies on the closed semiaxis [0, inf)")]
    PoleOnSemiaxis { re: f64, im: f64 },

    #[error("pole at {re}{im:+}i lies on the segment [-1, 1]")]
    PoleOnSegment { re: f64, im: f64 },

    #[error("pole set is empty (degree-0 function)")]
    PoleSetEmpty,

    #[error("root polishing failed to converge: {0}")]
    ConvergenceFailure(String),

    #[error("point is not on the contour: {0}")]
    OffContour(String),

    #[error("integral diverges: {0}")]
    DivergentIntegral(String),

    #[error("invalid geometry parameter: {0}")]
    BadGeometry(String),

    #[error("simple partial fraction has poles on both sides of the real axis")]
    PolesOnBothSides,

    #[error("pole at {re}{im:+}i lies outside the beam |arg z - pi| < alpha")]
    PolesOutsideBeam { re: f64, im: f64 },

    #[error("unknown witness kind `{0}`")]
    BadKind(String),

    #[error("invalid parameters: {0}")]
    BadParams(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("adaptive integration did not converge: {0}")]
    NoConvergence(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::EvalAtPole { .. } => "EvalAtPole",
            Error::PoleOnContour { .. } => "PoleOnContour",
            Error::NotProper { .. } => "NotProper",
            Error::PoleOnSemiaxis { .. } => "PoleOnSemiaxis",
            Error::PoleOnSegment { .. } => "PoleOnSegment",
            Error::PoleSetEmpty => "PoleSetEmpty",
            Error::ConvergenceFailure(_) => "ConvergenceFailure",
            Error::OffContour(_) => "OffContour",
            Error::DivergentIntegral(_) => "DivergentIntegral",
            Error::BadGeometry(_) => "BadGeometry",
            Error::PolesOnBothSides => "PolesOnBothSides",
            Error::PolesOutsideBeam { .. } => "PolesOutsideBeam",
            Error::BadKind(_) => "BadKind",
            Error::BadParams(_) => "BadParams",
            Error::InvalidInput(_) => "InvalidInput",
            Error::NoConvergence(_) => "NoConvergence",
        }
    }

    /// True for numerical failures, as opposed to rejected input.
    pub fn is_convergence(&self) -> bool {
        matches!(self, Error::ConvergenceFailure(_) | Error::NoConvergence(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
