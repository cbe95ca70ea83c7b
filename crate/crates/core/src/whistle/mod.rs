//! The whistle sector: loop, whistle and interval models, the ζ-matrix,
//! the Jacobian fundamental class and the dual operations `Dμ_W`,
//! `Dμ_{W^op}`, their composites and the B-V derivation.
//!
//! Fibre classes `z_1, …, z_l` (with `deg z_j = deg u_j − 1`) never appear
//! in stored classes: integration along the fibre is carried out by the
//! closed formula `h!(f·y_1⋯y_l) = (1⊗f)·det ζ`.

mod closed;
mod jacobian;
mod model;
mod table;
mod zeta;

pub use closed::{build_models, bv_operator, bv_table, interval_model, loop_model, Direction, WhistleModels};
pub(crate) use jacobian::jacobian_class_in;
pub use jacobian::{jacobian_class, jacobian_matrix, top_monomial, FundamentalClass};
pub use model::{Factor, GradedModel, MixedClass, ModelKind};
pub use table::{OperationTable, TableStatus};
pub use zeta::{permutations, zeta_matrix_in, ZetaMatrix};
