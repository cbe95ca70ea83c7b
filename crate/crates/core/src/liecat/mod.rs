//! Group/subgroup pairs given by their cohomology and restriction map, and
//! validation of the maximal-rank hypotheses.

mod group;
mod pair;
mod validate;

pub use group::GroupPresentation;
pub use pair::{poincare_series, PairDatum};
pub use validate::{validate_pair, Check, Outcome, ValidationReport};

/// Names of the checks in a [`ValidationReport`].
pub mod checks {
    pub use super::validate::{
        COPRIME, DEGREES, DIFFERENCE, FINITE, FUNDAMENTAL, POINCARE, RANK, REGULAR, TORSION, WEYL,
    };
}
