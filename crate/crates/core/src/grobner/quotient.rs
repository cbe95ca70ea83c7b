use alloc::format;
use alloc::vec::Vec;

use super::buchberger::{buchberger, reduce, BuchbergerOptions};
use crate::exactalg::{Monomial, Polynomial, RingRef};
use crate::{Error, Result};

/// A homogeneous ideal given by generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealPresentation {
    ring: RingRef,
    generators: Vec<Polynomial>,
}

impl IdealPresentation {
    pub fn new(ring: &RingRef, generators: Vec<Polynomial>) -> Result<IdealPresentation> {
        for (i, g) in generators.iter().enumerate() {
            if !crate::exactalg::poly::same_ring(g.ring(), ring) {
                return Err(Error::RingMismatch);
            }
            if g.is_zero() {
                return Err(Error::Invalid(format!("ideal generator {i} is zero")));
            }
            if !g.is_homogeneous() {
                return Err(Error::NonHomogeneous(format!("ideal generator {i}: {g}")));
            }
        }
        Ok(IdealPresentation { ring: ring.clone(), generators })
    }

    pub fn zero(ring: &RingRef) -> IdealPresentation {
        IdealPresentation { ring: ring.clone(), generators: Vec::new() }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }
}

/// A graded quotient `ring / ideal` with its reduced Gröbner basis.
#[derive(Clone, Debug)]
pub struct QuotientRing {
    ideal: IdealPresentation,
    basis: Vec<Polynomial>,
    leads: Vec<Monomial>,
}

/// Standard monomials by degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientBasis {
    pub by_degree: Vec<Vec<Monomial>>,
    /// Total dimension, when the quotient is finite-dimensional.
    pub total: Option<usize>,
}

impl QuotientBasis {
    pub fn counts(&self) -> Vec<usize> {
        self.by_degree.iter().map(|v| v.len()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Monomial> {
        self.by_degree.iter().flatten()
    }
}

impl QuotientRing {
    pub fn new(ideal: IdealPresentation) -> Result<QuotientRing> {
        QuotientRing::with_options(ideal, BuchbergerOptions::default())
    }

    pub fn with_options(ideal: IdealPresentation, opts: BuchbergerOptions) -> Result<QuotientRing> {
        let basis = buchberger(ideal.generators(), opts)?;
        let leads = basis.iter().map(|g| g.leading_monomial().unwrap().clone()).collect();
        Ok(QuotientRing { ideal, basis, leads })
    }

    /// The polynomial ring itself.
    pub fn free(ring: &RingRef) -> QuotientRing {
        QuotientRing { ideal: IdealPresentation::zero(ring), basis: Vec::new(), leads: Vec::new() }
    }

    pub fn ring(&self) -> &RingRef {
        self.ideal.ring()
    }

    pub fn ideal(&self) -> &IdealPresentation {
        &self.ideal
    }

    pub fn groebner_basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial> {
        if !crate::exactalg::poly::same_ring(p.ring(), self.ring()) {
            return Err(Error::RingMismatch);
        }
        Ok(self.reduce(p))
    }

    pub(crate) fn reduce(&self, p: &Polynomial) -> Polynomial {
        if self.basis.is_empty() {
            return p.clone();
        }
        reduce(p, &self.basis, &self.leads)
    }

    pub fn is_zero(&self, p: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self.leads.iter().any(|l| l.divides(m))
    }

    pub fn standard_monomials(&self, degree: u32) -> Vec<Monomial> {
        self.ring().monomials_of_degree(degree).into_iter().filter(|m| self.is_standard(m)).collect()
    }

    /// Finite-dimensional iff every variable has a pure power among the
    /// leading monomials.
    pub fn is_finite(&self) -> bool {
        (0..self.ring().nvars()).all(|i| self.leads.iter().any(|l| l.is_pure_power() == Some(i)))
            || self.leads.iter().any(|l| l.is_one())
    }

    /// Upper bound on the degree of a standard monomial of a finite quotient.
    pub fn top_degree_bound(&self) -> Option<u32> {
        if !self.is_finite() {
            return None;
        }
        if self.leads.iter().any(|l| l.is_one()) {
            return Some(0);
        }
        let ring = self.ring();
        Some(
            (0..ring.nvars())
                .map(|i| {
                    let e =
                        self.leads.iter().filter(|l| l.is_pure_power() == Some(i)).map(|l| l.exps()[i]).min().unwrap();
                    (e - 1) * ring.vars()[i].degree
                })
                .sum(),
        )
    }

    pub fn quotient_basis(&self, up_to: u32) -> QuotientBasis {
        let by_degree = (0..=up_to).map(|d| self.standard_monomials(d)).collect();
        let total = self.top_degree_bound().map(|top| (0..=top).map(|d| self.standard_monomials(d).len()).sum());
        QuotientBasis { by_degree, total }
    }

    /// All standard monomials of a finite quotient, by degree.
    pub fn full_basis(&self) -> Option<QuotientBasis> {
        let top = self.top_degree_bound()?;
        Some(self.quotient_basis(top))
    }
}
