//! Exact computations in graded connected commutative Hopf algebras that are
//! free polynomial algebras on graded generators.
//!
//! The crate is generic over the coefficient ring ([`ring::CoefficientRing`]);
//! the aliases below fix the rings used by the command-line front end.

pub mod algebra;
pub mod dual;
pub mod error;
pub mod hopf;
pub mod instances;
pub mod json;
pub mod parse;
pub mod random;
pub mod renorm;
pub mod ring;
pub mod suite;

pub use error::{HopfError, Result};

use ring::{Laurent, Poly, Rational};

pub type QElement = algebra::Element<Rational>;
pub type QTensor = algebra::Tensor<Rational>;
/// Truncated Laurent series in `eps` over the rationals.
pub type QLaurent = Laurent<Rational>;
/// Polynomials in one variable over the rationals.
pub type QPoly = Poly<Rational>;
