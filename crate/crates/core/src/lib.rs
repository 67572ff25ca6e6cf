//! Osculating hyperplanes to curves built from `t`-powers and `log t`-powers,
//! the means their intersections define, and computational checks of the
//! Wronskian and determinant identities behind them.
//!
//! Symbolic work happens in the exact ring [`LogPoly`] of finite sums
//! `c * t^m * (log t)^j` with rational `c`. Numeric work uses MPFR floats at a
//! caller-chosen [`Precision`].

pub mod cli;
pub mod combinat;
pub mod det;
pub mod error;
pub mod identities;
pub mod logpoly;
pub mod means;
pub mod numerics;
pub mod precision;
pub mod wronskian;

pub use error::{Error, Result};
pub use logpoly::{LogPoly, Monomial};
pub use means::{IntersectionResult, MeanRequest};
pub use precision::Precision;
pub use rug::{Float, Rational};
pub use wronskian::{Curve, CurveKind, DerivTable};
