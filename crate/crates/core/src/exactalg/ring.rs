use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::Field;
use crate::{Error, Result};

/// A polynomial generator: name, family tag and cohomological degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Variable {
    pub name: String,
    /// Family tag; in tensor rings this is the tensor-factor index.
    pub block: u32,
    pub degree: u32,
}

impl Variable {
    pub fn new(name: impl Into<String>, block: u32, degree: u32) -> Variable {
        Variable { name: name.into(), block, degree }
    }

    /// Name with the copy marks (`'`) of tensor factors stripped.
    pub fn display_name(&self) -> &str {
        self.name.trim_end_matches('\'')
    }
}

/// The ring context shared by polynomials: ground field and ordered variables.
/// The variable order fixes the monomial order (weighted degrevlex with the
/// first variable largest).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    field: Field,
    vars: Vec<Variable>,
}

pub type RingRef = Arc<Ring>;

impl Ring {
    pub fn new(field: Field, vars: Vec<Variable>) -> Result<RingRef> {
        let mut seen = BTreeSet::new();
        for v in &vars {
            if v.degree == 0 {
                return Err(Error::Invalid(format!("variable `{}` has degree 0", v.name)));
            }
            if !seen.insert(v.name.as_str()) {
                return Err(Error::Invalid(format!("duplicate variable `{}`", v.name)));
            }
        }
        Ok(Arc::new(Ring { field, vars }))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn vars(&self) -> &[Variable] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    pub fn weights(&self) -> impl Iterator<Item = u32> + '_ {
        self.vars.iter().map(|v| v.degree)
    }

    /// Same variables over another field.
    pub fn with_field(&self, field: Field) -> RingRef {
        Arc::new(Ring { field, vars: self.vars.clone() })
    }

    /// Tensor product of rings over `field`. Factor `k` becomes block `k`;
    /// a name already taken by an earlier factor gets `'` appended until it
    /// is unique. Returns the index map of each factor into the product.
    pub fn tensor(field: Field, factors: &[&Ring]) -> Result<(RingRef, Vec<Vec<usize>>)> {
        let mut vars: Vec<Variable> = Vec::new();
        let mut maps = Vec::with_capacity(factors.len());
        let mut taken: BTreeSet<String> = BTreeSet::new();
        for (k, r) in factors.iter().enumerate() {
            let mut map = Vec::with_capacity(r.nvars());
            for v in r.vars() {
                let mut name = v.name.clone();
                while taken.contains(&name) {
                    name.push('\'');
                }
                taken.insert(name.clone());
                map.push(vars.len());
                vars.push(Variable::new(name, k as u32, v.degree));
            }
            maps.push(map);
        }
        Ok((Ring::new(field, vars)?, maps))
    }

    pub fn monomial(&self, exps: Vec<u32>) -> Monomial {
        debug_assert_eq!(exps.len(), self.vars.len());
        let degree = exps.iter().zip(self.weights()).map(|(e, w)| e * w).sum();
        Monomial { degree, exps }
    }

    pub fn one_monomial(&self) -> Monomial {
        Monomial { degree: 0, exps: vec![0; self.vars.len()] }
    }

    pub fn var_monomial(&self, i: usize) -> Monomial {
        let mut exps = vec![0; self.vars.len()];
        exps[i] = 1;
        self.monomial(exps)
    }

    pub fn lcm(&self, a: &Monomial, b: &Monomial) -> Monomial {
        self.monomial(a.exps.iter().zip(&b.exps).map(|(x, y)| *x.max(y)).collect())
    }

    /// All monomials of weighted degree exactly `degree`, in ascending order.
    pub fn monomials_of_degree(&self, degree: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut exps = vec![0u32; self.vars.len()];
        self.enumerate(0, degree, &mut exps, &mut out);
        out.sort();
        out
    }

    fn enumerate(&self, i: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == self.vars.len() {
            if left == 0 {
                out.push(self.monomial(exps.clone()));
            }
            return;
        }
        let w = self.vars[i].degree;
        let mut e = 0;
        while e * w <= left {
            exps[i] = e;
            self.enumerate(i + 1, left - e * w, exps, out);
            e += 1;
        }
        exps[i] = 0;
    }
}

/// Exponent vector together with its weighted degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    degree: u32,
    exps: Vec<u32>,
}

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial {
            degree: other.degree - self.degree,
            exps: other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn is_pure_power(&self) -> Option<usize> {
        let mut idx = None;
        for (i, e) in self.exps.iter().enumerate() {
            if *e > 0 {
                if idx.is_some() {
                    return None;
                }
                idx = Some(i);
            }
        }
        idx
    }
}

impl core::ops::Mul<&Monomial> for &Monomial {
    type Output = Monomial;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &Monomial) -> Monomial {
        Monomial {
            degree: self.degree + rhs.degree,
            exps: self.exps.iter().zip(&rhs.exps).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Ord for Monomial {
    /// Weighted degree first, then reverse lexicographic: the monomial with
    /// the smaller exponent in the last differing variable is larger.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| {
            for (a, b) in self.exps.iter().zip(&other.exps).rev() {
                if a != b {
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> RingRef {
        Ring::new(
            Field::Rational,
            vec![Variable::new("u1", 0, 2), Variable::new("u2", 0, 2), Variable::new("v1", 1, 2)],
        )
        .unwrap()
    }

    #[test]
    fn degrevlex_order() {
        let r = ring();
        let u1u2 = r.monomial(vec![1, 1, 0]);
        let u2sq = r.monomial(vec![0, 2, 0]);
        let u2v1 = r.monomial(vec![0, 1, 1]);
        let u1 = r.var_monomial(0);
        assert!(u1 < u1u2);
        assert!(u1u2 > u2sq);
        assert!(u2sq > u2v1);
        assert!(r.var_monomial(0) > r.var_monomial(1));
    }

    #[test]
    fn enumerates_by_weight() {
        let r = Ring::new(Field::Rational, vec![Variable::new("a", 0, 2), Variable::new("b", 0, 4)]).unwrap();
        assert_eq!(r.monomials_of_degree(4).len(), 2);
        assert_eq!(r.monomials_of_degree(8).len(), 3);
        assert!(r.monomials_of_degree(3).is_empty());
    }

    #[test]
    fn duplicate_names_rejected() {
        let err = Ring::new(Field::Rational, vec![Variable::new("u", 0, 2), Variable::new("u", 0, 2)]);
        assert!(err.is_err());
    }
}
