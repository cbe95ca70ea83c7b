//! Exact scalars, weighted-graded multivariate polynomials and polynomial
//! matrices.

mod matrix;
pub(crate) mod parse;
pub(crate) mod poly;
mod ring;
mod scalar;
mod telescope;

pub use matrix::PolyMatrix;
pub use parse::{parse_expression, parse_polynomial, ExprTarget};
pub use poly::{poly_arith, ring_with_vars, ArithOp, Polynomial};
pub use ring::{Monomial, Ring, RingRef, Variable};
pub(crate) use scalar::{inv_mod, mul_mod};
pub use scalar::{Field, Scalar, MAX_MODULUS};
pub use telescope::telescoping_split;
