//! Numerical tolerances shared by the engines.

/// Distance (scaled by `max(1, |z_k|)`) below which an evaluation point is
/// treated as a pole.
pub const POLE_EVAL: f64 = 1e-13;

/// Reflected pole locations closer than this (scaled by `max(1, |z|)`) merge.
pub const MERGE: f64 = 1e-10;

/// Relative distance below which a pole counts as lying on the contour.
pub const CONTOUR: f64 = 1e-8;

/// Phase residual at which a notch is accepted.
pub const PHASE: f64 = 1e-12;

/// Iteration cap for safeguarded Newton polishing.
pub const NEWTON_MAX_ITER: usize = 60;

/// Relative slack allowed when a bound report decides `lhs <= rhs`.
pub const BOUND_SLACK: f64 = 1e-10;

/// Default relative tolerance of the adaptive oracle.
pub const ORACLE: f64 = 1e-10;

/// Relative tolerance for equality claims of extremal witnesses.
pub const SHARPNESS: f64 = 1e-8;
