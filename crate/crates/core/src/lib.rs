//! Parametric quadrature with variable nodes for complex rational functions
//! on the circle, the real axis, the semiaxis and the segment, together with
//! the sharp Jackson-Nikolskii type inequalities they imply.

pub mod blaschke;
pub mod domain;
pub mod error;
pub mod extremum;
pub mod inequalities;
pub mod json;
pub mod notches;
pub mod oracle;
pub mod quadrature;
pub mod ratfun;
pub mod tol;
pub mod verify;

pub use num_complex::Complex64;

pub use blaschke::{BlaschkeProduct, Contour};
pub use domain::{Domain, Weight};
pub use error::{Error, Result};
pub use inequalities::{BoundReport, NikolskiiParams};
pub use notches::{Notch, NotchSet};
pub use quadrature::{Mode, QuadratureResult};
pub use ratfun::{ComplexPoint, Pole, PoleSet, RationalFunction, Region, SimplePartialFraction};
