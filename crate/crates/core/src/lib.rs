//! Exact truncated tensor power series over Φ = F^N, the groups they form
//! under multiplication and substitution, and their realization as Sheffer
//! operators acting on polynomials on the dual space.

pub mod check;
pub mod cli;
pub mod combinat;
pub mod error;
pub mod groups;
pub mod json;
pub mod opmatrix;
pub mod random;
pub mod scalar;
pub mod series;
pub mod sheffer;
pub mod symtensor;
pub mod tpoly;

pub use error::{Error, Result};
pub use scalar::{Context, Gaussian, Rational, Ring, RingKind, Scalar};
