//! Exact cohomological evaluation of labeled open-closed cobordism operations
//! for classifying spaces of compact Lie groups with polynomial cohomology.
//!
//! The crate is `no_std` (it needs `alloc`). Everything is built on exact
//! arithmetic over ℚ or a prime field:
//!
//! * [`exactalg`]: weighted-graded multivariate polynomials, substitution,
//!   derivatives, exact division, telescoping divided differences and
//!   polynomial determinants.
//! * [`grobner`]: Buchberger bases, quotient rings, Poincaré series, Koszul
//!   homology and free-module decomposition by graded linear algebra.
//! * [`liecat`]: group/subgroup presentations `(G, H, ρ)` and their validation.
//! * [`whistle`]: the loop, whistle and interval models, the ζ-matrix, the
//!   Jacobian fundamental class and the dual whistle operations.
//! * [`openstr`]: the three-label open sector (`Υ`, `Υ^op`).
//! * [`cobdsl`]: a small language of cobordism words and its evaluator.
#![no_std]

extern crate alloc;

mod error;
#[cfg(test)]
mod testing;

pub mod cobdsl;
pub mod exactalg;
pub mod grobner;
pub mod liecat;
pub mod openstr;
pub mod whistle;

pub use error::{Error, Result};
