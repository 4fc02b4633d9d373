//! Exact arithmetic: rationals, Gaussian rationals and dense polynomials.
//!
//! No floating point enters this module. Every value is in canonical form
//! after every operation, so equality is structural.

mod complex;
mod poly;
mod rational;

pub use complex::ComplexRational;
pub use poly::Polynomial;
pub use rational::{format_rational, parse_rational, Rational};
