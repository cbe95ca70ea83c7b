use alloc::format;
use alloc::vec::Vec;

use crate::exactalg::{Monomial, PolyMatrix, Polynomial, Scalar};
use crate::grobner::QuotientRing;
use crate::liecat::PairDatum;
use crate::{Error, Result};

/// The Jacobian representative `Λ_W = det(∂ρ(x_i)/∂u_j)` of the fundamental
/// class of `G/H`, with `NF(Λ_W) = λ·b_top`.
#[derive(Clone, Debug)]
pub struct FundamentalClass {
    pub matrix: PolyMatrix,
    pub jacobian: Polynomial,
    pub normal_form: Polynomial,
    pub lambda: Scalar,
    pub b_top: Monomial,
}

impl FundamentalClass {
    pub fn degree(&self) -> u32 {
        self.b_top.degree()
    }
}

pub fn jacobian_matrix(pair: &PairDatum) -> Result<PolyMatrix> {
    pair.check_shape()?;
    let rows: Vec<Vec<Polynomial>> = pair
        .restriction()
        .iter()
        .map(|f| (0..pair.u_ring().nvars()).map(|j| f.partial_derivative(j)).collect())
        .collect();
    PolyMatrix::from_rows(pair.u_ring(), rows)
}

/// The unique standard monomial of top degree of a finite quotient.
pub fn top_monomial(q: &QuotientRing) -> Result<Monomial> {
    let basis = q.full_basis().ok_or_else(|| Error::Hypothesis("restriction quotient is infinite".into()))?;
    let top = basis
        .by_degree
        .iter()
        .rposition(|ms| !ms.is_empty())
        .ok_or_else(|| Error::Hypothesis("restriction quotient is zero".into()))?;
    match basis.by_degree[top].as_slice() {
        [m] => Ok(m.clone()),
        ms => {
            Err(Error::Hypothesis(format!("top degree {top} of the restriction quotient has dimension {}", ms.len())))
        }
    }
}

/// `Λ_W`, `λ` and `b_top`; fails when `λ = 0` (e.g. in characteristic
/// dividing a degree).
pub fn jacobian_class(pair: &PairDatum) -> Result<FundamentalClass> {
    jacobian_class_in(pair, &pair.restriction_quotient()?)
}

pub(crate) fn jacobian_class_in(pair: &PairDatum, q: &QuotientRing) -> Result<FundamentalClass> {
    let matrix = jacobian_matrix(pair)?;
    let jacobian = matrix.determinant()?;
    let b_top = top_monomial(q)?;
    let normal_form = q.normal_form(&jacobian)?;
    let lambda = normal_form.coefficient(&b_top);
    if normal_form.nterms() > 1 || (!normal_form.is_zero() && lambda.is_zero()) {
        return Err(Error::Certificate(format!(
            "{}: normal form {normal_form} of the Jacobian is not a multiple of the top monomial",
            pair.name()
        )));
    }
    if lambda.is_zero() {
        return Err(Error::Hypothesis(format!(
            "{}: the Jacobian vanishes in H*(G/H) over {} (λ = 0; degree condition fails)",
            pair.name(),
            pair.field()
        )));
    }
    Ok(FundamentalClass { matrix, jacobian, normal_form, lambda, b_top })
}
