//! Exact arithmetic over Q: rationals, truncated q-series, truncated
//! bivariate polynomials, dense matrices and symbolic zeta constants.

mod bipoly;
mod matrix;
mod rational;
mod scalar;
mod series;
mod symbolic;

pub use bipoly::BiPoly;
pub use matrix::{canonical_basis, max_abs, primitive, QMatrix, Rref, Side};
pub use rational::{binomial, binomial_q, factorial, Rational};
pub use scalar::{RingScalar, Scalar};
pub use series::{DynSeries, QSeries};
pub use symbolic::{Symbol, SymbolicScalar};
