//! Gröbner bases, graded quotients, Poincaré series, Koszul homology and
//! free-module decomposition.

mod buchberger;
mod decompose;
mod koszul;
pub mod linalg;
mod quotient;
mod series;

pub use buchberger::{buchberger, reduce, BuchbergerOptions};
pub use decompose::{graded_decompose, FreeModuleDecomposer};
pub use koszul::{koszul_homology_dims, KoszulHomology, CERTIFICATE_PRIME};
pub use quotient::{IdealPresentation, QuotientBasis, QuotientRing};
pub use series::PoincareSeries;
