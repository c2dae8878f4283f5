//! Exact permanents of matrices with polynomial entries, real-rootedness
//! certification, stability testing, and the combinatorial oracles used to
//! cross-check them.
//!
//! Everything here runs over arbitrary-precision rationals and needs only
//! `alloc`. Floating-point root location lives in the companion `stableperm`
//! crate.

#![no_std]

extern crate alloc;

pub mod apolarity;
pub mod combinatorics;
pub mod matrices;
pub mod permanent;
pub mod poly;
pub mod sampling;
pub mod stability;
pub mod univariate;

pub use matrices::{FerrersMatrix, Matrix, MatrixError, MonotoneColumnMatrix, RationalMatrix, SymbolicMatrix};
pub use permanent::{AlphaWeight, Engine, PermError};
pub use poly::{Monomial, Namespace, Polynomial, VariableId};
pub use univariate::UnivariatePolynomial;

/// Exact rational scalar used throughout.
pub type Rational = num_rational::BigRational;

/// `Rational` from a machine integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// `num / den` as a `Rational`. Panics if `den` is zero.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}
