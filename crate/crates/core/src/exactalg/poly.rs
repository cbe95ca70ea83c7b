use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::{Field, Monomial, Ring, RingRef, Scalar};
use crate::{Error, Result};

/// A multivariate polynomial over the field of its ring. Zero coefficients
/// are never stored; terms are keyed by the ring's monomial order.
#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: RingRef,
    terms: BTreeMap<Monomial, Scalar>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

pub(crate) fn same_ring(a: &RingRef, b: &RingRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Ring-checked `p op q`.
pub fn poly_arith(op: ArithOp, p: &Polynomial, q: &Polynomial) -> Result<Polynomial> {
    match op {
        ArithOp::Add => p.checked_add(q),
        ArithOp::Sub => p.checked_sub(q),
        ArithOp::Mul => p.checked_mul(q),
    }
}

impl Polynomial {
    pub fn zero(ring: &RingRef) -> Polynomial {
        Polynomial { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ring: &RingRef, c: Scalar) -> Polynomial {
        let mut p = Polynomial::zero(ring);
        p.add_term(ring.one_monomial(), c);
        p
    }

    pub fn one(ring: &RingRef) -> Polynomial {
        Polynomial::constant(ring, ring.field().one())
    }

    pub fn from_i64(ring: &RingRef, n: i64) -> Polynomial {
        Polynomial::constant(ring, ring.field().from_i64(n))
    }

    pub fn var(ring: &RingRef, i: usize) -> Polynomial {
        Polynomial::monomial(ring, ring.var_monomial(i), ring.field().one())
    }

    pub fn var_named(ring: &RingRef, name: &str) -> Result<Polynomial> {
        let i = ring.var_index(name).ok_or_else(|| Error::UnknownVariable(name.into()))?;
        Ok(Polynomial::var(ring, i))
    }

    pub fn monomial(ring: &RingRef, m: Monomial, c: Scalar) -> Polynomial {
        let mut p = Polynomial::zero(ring);
        p.add_term(m, c);
        p
    }

    pub fn from_terms(ring: &RingRef, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Polynomial {
        let mut p = Polynomial::zero(ring);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn field(&self) -> Field {
        self.ring.field()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, Scalar> {
        self.terms
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field().zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn constant_term(&self) -> Scalar {
        self.coefficient(&self.ring.one_monomial())
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next_back()
    }

    pub fn leading_coefficient(&self) -> Option<&Scalar> {
        self.terms.values().next_back()
    }

    /// Largest weighted degree of a term; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.leading_monomial().map(|m| m.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|m| m.degree());
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    /// Degree of a nonzero homogeneous polynomial.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        if self.is_zero() || !self.is_homogeneous() {
            None
        } else {
            self.degree()
        }
    }

    /// Adds `c·m` in place.
    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn check(&self, other: &Polynomial) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        let mut out = Polynomial::zero(&self.ring);
        for (m, c) in &self.terms {
            for (n, d) in &other.terms {
                out.add_term(m * n, c * d);
            }
        }
        Ok(out)
    }

    /// `self += c·m·other`.
    pub fn add_scaled_shifted(&mut self, c: &Scalar, m: &Monomial, other: &Polynomial) {
        for (n, d) in &other.terms {
            self.add_term(m * n, c * d);
        }
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, d)| (m.clone(), c * d)).collect() }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().map(|(n, d)| (m * n, c * d)).collect() }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Scales so that the leading coefficient is one.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coefficient() {
            None => self.clone(),
            Some(c) => self.scale(&c.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Substitutes `images[i]` for variable `i`. With `graded`, every image
    /// must be zero or homogeneous of the variable's degree.
    pub fn substitute(&self, images: &[Polynomial], target: &RingRef, graded: bool) -> Result<Polynomial> {
        if images.len() != self.ring.nvars() {
            return Err(Error::Invalid(format!(
                "substitution has {} images for {} variables",
                images.len(),
                self.ring.nvars()
            )));
        }
        for (v, img) in self.ring.vars().iter().zip(images) {
            if !same_ring(img.ring(), target) {
                return Err(Error::RingMismatch);
            }
            if graded && !img.is_zero() {
                match img.homogeneous_degree() {
                    Some(d) if d == v.degree => {}
                    Some(d) => {
                        return Err(Error::DegreeMismatch { variable: v.name.clone(), expected: v.degree, found: d })
                    }
                    None => return Err(Error::NonHomogeneous(format!("image of `{}`", v.name))),
                }
            }
        }
        let mut powers: Vec<Vec<Polynomial>> =
            images.iter().map(|p| vec![Polynomial::one(target), p.clone()]).collect();
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, target.field().convert(c)?);
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Substitution keyed by variable name; every variable of the ring that
    /// occurs in `self` must be mapped.
    pub fn substitute_named(
        &self,
        map: &BTreeMap<String, Polynomial>,
        target: &RingRef,
        graded: bool,
    ) -> Result<Polynomial> {
        let mut images = Vec::with_capacity(self.ring.nvars());
        for (i, v) in self.ring.vars().iter().enumerate() {
            match map.get(&v.name) {
                Some(p) => images.push(p.clone()),
                None => {
                    if self.terms.keys().any(|m| m.exps()[i] > 0) {
                        return Err(Error::UnmappedVariable(v.name.clone()));
                    }
                    images.push(Polynomial::zero(target));
                }
            }
        }
        // Unused variables map to zero silently; graded checks only matter
        // for variables that occur.
        let occurring: Vec<bool> = (0..self.ring.nvars()).map(|i| self.terms.keys().any(|m| m.exps()[i] > 0)).collect();
        if graded {
            for (i, v) in self.ring.vars().iter().enumerate() {
                if occurring[i] {
                    let img = &images[i];
                    if !img.is_zero() && img.homogeneous_degree() != Some(v.degree) {
                        return Err(match img.homogeneous_degree() {
                            Some(d) => Error::DegreeMismatch { variable: v.name.clone(), expected: v.degree, found: d },
                            None => Error::NonHomogeneous(format!("image of `{}`", v.name)),
                        });
                    }
                }
            }
        }
        self.substitute(&images, target, false)
    }

    /// Re-indexes variables into `target`: variable `i` becomes `map[i]`.
    pub fn embed(&self, target: &RingRef, map: &[usize]) -> Polynomial {
        let n = target.nvars();
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; n];
            for (i, &e) in m.exps().iter().enumerate() {
                exps[map[i]] += e;
            }
            out.add_term(target.monomial(exps), c.clone());
        }
        out
    }

    /// Replaces variable `from` by variable `to` (same ring).
    pub fn replace_variable(&self, from: usize, to: usize) -> Polynomial {
        let mut out = Polynomial::zero(&self.ring);
        for (m, c) in &self.terms {
            let mut exps = m.exps().to_vec();
            let e = exps[from];
            exps[from] = 0;
            exps[to] += e;
            out.add_term(self.ring.monomial(exps), c.clone());
        }
        out
    }

    pub fn partial_derivative(&self, v: usize) -> Polynomial {
        let field = self.field();
        let mut out = Polynomial::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.exps()[v];
            if e == 0 {
                continue;
            }
            let mut exps = m.exps().to_vec();
            exps[v] -= 1;
            out.add_term(self.ring.monomial(exps), c * &field.from_i64(e as i64));
        }
        out
    }

    /// Returns `r` with `self = q·r`; fails unless `q` divides `self` exactly.
    pub fn exact_divide(&self, q: &Polynomial) -> Result<Polynomial> {
        self.check(q)?;
        let (lm, lc) = q.leading_term().ok_or(Error::DivisionByZero)?;
        let lc_inv = lc.inv().expect("nonzero");
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(&self.ring);
        while let Some((m, c)) = rem.leading_term() {
            if !lm.divides(m) {
                return Err(Error::NotDivisible);
            }
            let t = lm.quotient_of(m);
            let coef = c * &lc_inv;
            rem.add_scaled_shifted(&-&coef, &t, q);
            quot.add_term(t, coef);
        }
        Ok(quot)
    }

    /// The same polynomial over another field (coefficients mapped).
    pub fn change_field(&self, ring: &RingRef) -> Result<Polynomial> {
        if ring.vars() != self.ring.vars() {
            return Err(Error::RingMismatch);
        }
        let f = ring.field();
        let mut out = Polynomial::zero(ring);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f.convert(c)?);
        }
        Ok(out)
    }

    /// Evaluates all variables of the given indices at zero.
    pub fn kill_variables(&self, vars: &[usize]) -> Polynomial {
        let mut out = Polynomial::zero(&self.ring);
        for (m, c) in &self.terms {
            if vars.iter().all(|&i| m.exps()[i] == 0) {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// Formats with a custom variable naming.
    pub fn fmt_with(&self, f: &mut dyn fmt::Write, names: &dyn Fn(usize) -> String) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mono = monomial_string(m, names);
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

pub(crate) fn monomial_string(m: &Monomial, names: &dyn Fn(usize) -> String) -> String {
    let mut s = String::new();
    for (i, &e) in m.exps().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !s.is_empty() {
            s.push('*');
        }
        s.push_str(&names(i));
        if e > 1 {
            s.push_str(&format!("^{e}"));
        }
    }
    s
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ring = self.ring.clone();
        self.fmt_with(f, &|i| ring.vars()[i].name.clone())
    }
}

macro_rules! polyop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl core::ops::$tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            /// Panics on ring mismatch; use the `checked_*` variant to handle it.
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect("polynomial ring mismatch")
            }
        }
        impl core::ops::$tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                self.$checked(&rhs).expect("polynomial ring mismatch")
            }
        }
    };
}

polyop!(Add, add, checked_add);
polyop!(Sub, sub, checked_sub);
polyop!(Mul, mul, checked_mul);

impl core::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-self.field().one())
    }
}

impl core::ops::Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// Builds a ring and returns it with its variables as polynomials.
pub fn ring_with_vars(field: Field, vars: Vec<super::Variable>) -> Result<(RingRef, Vec<Polynomial>)> {
    let ring = Ring::new(field, vars)?;
    let gens = (0..ring.nvars()).map(|i| Polynomial::var(&ring, i)).collect();
    Ok((ring, gens))
}
