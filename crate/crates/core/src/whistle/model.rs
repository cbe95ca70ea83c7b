use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use crate::exactalg::{
    parse_expression, poly::same_ring, ExprTarget, Field, Monomial, Polynomial, Ring, RingRef, Scalar, Variable,
};
use crate::grobner::{IdealPresentation, QuotientRing};
use crate::{Error, Result};

/// Which presentation a model is.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModelKind {
    /// `H*(BG)⊗Λ(y)`, the free loop space of `BG`.
    Loop { group: String },
    /// `H*(BH)⊗Λ(y)`.
    Whistle { pair: String },
    /// `H*(BK)⊗H*(BL)/(k*x⊗1 − 1⊗ℓ*x)`; `K = L = H` is the closed interval model.
    Interval { left: String, right: String },
    /// `H*(BK)⊗H*(BH)⊗H*(BL)` modulo both relation families.
    Upsilon { left: String, middle: String, right: String },
    /// Tensor product of the listed factor models.
    Tensor,
}

/// One tensor factor of a [`GradedModel`] built by [`GradedModel::tensor`].
#[derive(Clone, Debug)]
pub struct Factor {
    pub model: Arc<GradedModel>,
    pub even_offset: usize,
    pub odd_offset: usize,
    pub block_offset: u32,
}

/// A graded-commutative algebra `Q ⊗ Λ(odd)` with `Q` an even quotient
/// ring. Variable blocks are the tensor segments used for printing and
/// parsing.
#[derive(Clone, Debug)]
pub struct GradedModel {
    kind: ModelKind,
    even: QuotientRing,
    odd: Vec<Variable>,
    factors: Vec<Factor>,
}

impl GradedModel {
    pub fn new(kind: ModelKind, even: QuotientRing, odd: Vec<Variable>) -> Result<GradedModel> {
        if odd.len() > 32 {
            return Err(Error::Invalid("at most 32 odd generators are supported".into()));
        }
        for v in &odd {
            if v.degree % 2 == 0 {
                return Err(Error::Invalid(format!("odd generator `{}` has even degree {}", v.name, v.degree)));
            }
            if even.ring().var_index(&v.name).is_some() || odd.iter().filter(|w| w.name == v.name).count() > 1 {
                return Err(Error::Invalid(format!("duplicate generator `{}`", v.name)));
            }
        }
        Ok(GradedModel { kind, even, odd, factors: Vec::new() })
    }

    /// `M₁ ⊗ … ⊗ M_k`; generators of later factors get `'` marks where
    /// names collide. An empty list gives the ground field.
    pub fn tensor(field: Field, models: &[Arc<GradedModel>]) -> Result<GradedModel> {
        if models.len() == 1 {
            return Ok((*models[0]).clone());
        }
        let mut vars: Vec<Variable> = Vec::new();
        let mut odd: Vec<Variable> = Vec::new();
        let mut factors = Vec::new();
        let mut block = 0u32;
        let mut taken: alloc::collections::BTreeSet<String> = alloc::collections::BTreeSet::new();
        let fresh = |name: &str, taken: &mut alloc::collections::BTreeSet<String>| {
            let mut n = name.to_string();
            while taken.contains(&n) {
                n.push('\'');
            }
            taken.insert(n.clone());
            n
        };
        for m in models {
            if m.field() != field {
                return Err(Error::FieldMismatch);
            }
            factors.push(Factor {
                model: m.clone(),
                even_offset: vars.len(),
                odd_offset: odd.len(),
                block_offset: block,
            });
            for v in m.even.ring().vars() {
                vars.push(Variable::new(fresh(&v.name, &mut taken), block + v.block, v.degree));
            }
            for v in &m.odd {
                odd.push(Variable::new(fresh(&v.name, &mut taken), block + v.block, v.degree));
            }
            block += m.blocks();
        }
        let ring = Ring::new(field, vars)?;
        let mut gens = Vec::new();
        for f in &factors {
            let map: Vec<usize> = (0..f.model.even.ring().nvars()).map(|i| f.even_offset + i).collect();
            for g in f.model.even.groebner_basis() {
                gens.push(g.embed(&ring, &map));
            }
        }
        let even = QuotientRing::new(IdealPresentation::new(&ring, gens)?)?;
        let mut model = GradedModel::new(ModelKind::Tensor, even, odd)?;
        model.factors = factors;
        Ok(model)
    }

    pub fn kind(&self) -> &ModelKind {
        &self.kind
    }

    pub fn field(&self) -> Field {
        self.even.ring().field()
    }

    pub fn even(&self) -> &QuotientRing {
        &self.even
    }

    pub fn ring(&self) -> &RingRef {
        self.even.ring()
    }

    pub fn odd(&self) -> &[Variable] {
        &self.odd
    }

    /// Factors of a tensor model; empty for a primitive model.
    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    /// Number of tensor segments.
    pub fn blocks(&self) -> u32 {
        let even = self.ring().vars().iter().map(|v| v.block + 1).max().unwrap_or(1);
        let odd = self.odd.iter().map(|v| v.block + 1).max().unwrap_or(1);
        even.max(odd)
    }

    pub fn full_mask(&self) -> u32 {
        if self.odd.len() == 32 {
            u32::MAX
        } else {
            (1u32 << self.odd.len()) - 1
        }
    }

    pub fn mask_degree(&self, mask: u32) -> u32 {
        self.odd.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, v)| v.degree).sum()
    }

    pub fn zero(&self) -> MixedClass {
        MixedClass { terms: BTreeMap::new() }
    }

    pub fn one(&self) -> MixedClass {
        self.even_class(Polynomial::one(self.ring()))
    }

    /// `p ⊗ 1` in exterior degree 0.
    pub fn even_class(&self, p: Polynomial) -> MixedClass {
        self.class([(0, p)])
    }

    /// Builds and normalises a class from `(odd mask, coefficient)` pairs.
    pub fn class(&self, terms: impl IntoIterator<Item = (u32, Polynomial)>) -> MixedClass {
        let mut acc: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (mask, p) in terms {
            debug_assert!(same_ring(p.ring(), self.ring()));
            let slot = acc.entry(mask).or_insert_with(|| Polynomial::zero(self.ring()));
            *slot = &*slot + &p;
        }
        let terms = acc.into_iter().map(|(m, p)| (m, self.even.reduce(&p))).filter(|(_, p)| !p.is_zero()).collect();
        MixedClass { terms }
    }

    /// The basis element `m·y_mask`.
    pub fn basis_class(&self, m: &Monomial, mask: u32) -> MixedClass {
        self.class([(mask, Polynomial::monomial(self.ring(), m.clone(), self.field().one()))])
    }

    /// `y_S` for the listed odd generator indices, in the given order.
    pub fn odd_product(&self, indices: &[usize]) -> MixedClass {
        let mut acc = self.one();
        for &i in indices {
            acc = self.mul(&acc, &self.class([(1 << i, Polynomial::one(self.ring()))]));
        }
        acc
    }

    pub fn add(&self, a: &MixedClass, b: &MixedClass) -> MixedClass {
        self.class(a.terms.iter().chain(&b.terms).map(|(m, p)| (*m, p.clone())))
    }

    pub fn sub(&self, a: &MixedClass, b: &MixedClass) -> MixedClass {
        self.add(a, &self.scale(b, &-&self.field().one()))
    }

    pub fn scale(&self, a: &MixedClass, c: &Scalar) -> MixedClass {
        self.class(a.terms.iter().map(|(m, p)| (*m, p.scale(c))))
    }

    /// Graded-commutative product.
    pub fn mul(&self, a: &MixedClass, b: &MixedClass) -> MixedClass {
        let mut out = Vec::new();
        for (ma, pa) in &a.terms {
            for (mb, pb) in &b.terms {
                if ma & mb != 0 {
                    continue;
                }
                let prod = pa * pb;
                out.push((ma | mb, if wedge_sign(*ma, *mb) { -&prod } else { prod }));
            }
        }
        self.class(out)
    }

    /// Multiplies by an even polynomial.
    pub fn mul_even(&self, p: &Polynomial, a: &MixedClass) -> MixedClass {
        self.class(a.terms.iter().map(|(m, q)| (*m, p * q)))
    }

    /// Basis of the model in total degrees `0..=cap`: `(monomial, odd mask)`
    /// with the monomial standard, sorted by degree.
    /// Splits a basis element of a tensor model into its factor components.
    pub fn split_basis(&self, m: &Monomial, mask: u32) -> Vec<(Monomial, u32)> {
        self.factors
            .iter()
            .map(|f| {
                let ring = f.model.ring();
                let exps = m.exps()[f.even_offset..f.even_offset + ring.nvars()].to_vec();
                let width = f.model.odd.len();
                let bits = if width == 0 { 0 } else { (mask >> f.odd_offset) & f.model.full_mask() };
                (ring.monomial(exps), bits)
            })
            .collect()
    }

    /// The image of a class of factor `k` under `c ↦ 1⊗…⊗c⊗…⊗1`.
    pub fn embed_factor(&self, k: usize, c: &MixedClass) -> MixedClass {
        let f = &self.factors[k];
        let map: Vec<usize> = (0..f.model.ring().nvars()).map(|i| f.even_offset + i).collect();
        self.class(c.terms().map(|(mask, p)| (mask << f.odd_offset, p.embed(self.ring(), &map))))
    }

    pub fn basis_up_to(&self, cap: u32) -> Vec<(Monomial, u32)> {
        let mut masks: Vec<u32> = (0..=self.full_mask()).collect();
        masks.sort_by_key(|m| (m.count_ones(), *m));
        let mut out = Vec::new();
        for d in 0..=cap {
            for &mask in &masks {
                let md = self.mask_degree(mask);
                if md > d {
                    continue;
                }
                for m in self.even.standard_monomials(d - md) {
                    out.push((m, mask));
                }
            }
        }
        out
    }

    pub fn parse(&self, text: &str) -> Result<MixedClass> {
        parse_expression(text, &ClassTarget { model: self })
    }

    pub fn format(&self, c: &MixedClass) -> String {
        let mut s = String::new();
        self.write(&mut s, c).expect("writing to a string");
        s
    }

    fn write(&self, f: &mut dyn fmt::Write, c: &MixedClass) -> fmt::Result {
        if c.is_zero() {
            return f.write_str("0");
        }
        if self.blocks() > 1 {
            return self.write_tensor(f, c);
        }
        let names = |i: usize| self.ring().vars()[i].name.clone();
        let mut first = true;
        for (mask, p) in c.ordered() {
            let odd = self.odd_string(mask, None);
            if mask == 0 || p.nterms() == 1 {
                for (m, coef) in p.terms().rev() {
                    write_term(f, coef, &crate::exactalg::poly::monomial_string(m, &names), &odd, first)?;
                    first = false;
                }
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            f.write_str("(")?;
            p.fmt_with(f, &names)?;
            write!(f, ")*{odd}")?;
            first = false;
        }
        Ok(())
    }

    fn odd_string(&self, mask: u32, block: Option<u32>) -> String {
        let parts: Vec<&str> = self
            .odd
            .iter()
            .enumerate()
            .filter(|(i, v)| mask & (1 << i) != 0 && block.is_none_or(|b| v.block == b))
            .map(|(_, v)| v.display_name())
            .collect();
        parts.join("*")
    }

    fn write_tensor(&self, f: &mut dyn fmt::Write, c: &MixedClass) -> fmt::Result {
        let vars = self.ring().vars();
        let mut first = true;
        for (mask, p) in c.ordered() {
            for (m, coef) in p.terms().rev() {
                let mut segments = Vec::new();
                for b in 0..self.blocks() {
                    let mut parts: Vec<String> = Vec::new();
                    for (i, e) in m.exps().iter().enumerate() {
                        if *e > 0 && vars[i].block == b {
                            let n = vars[i].display_name();
                            parts.push(if *e == 1 { n.to_string() } else { format!("{n}^{e}") });
                        }
                    }
                    let odd = self.odd_string(mask, Some(b));
                    if !odd.is_empty() {
                        parts.push(odd);
                    }
                    segments.push(if parts.is_empty() { "1".to_string() } else { parts.join("*") });
                }
                let body = if m.is_one() && mask == 0 { "1".to_string() } else { segments.join("⊗") };
                write_term(f, coef, &body, "", first)?;
                first = false;
            }
        }
        Ok(())
    }
}

/// `y_a · y_b = ± y_{a∪b}` for disjoint masks; true when the sign is negative.
pub(crate) fn wedge_sign(a: u32, b: u32) -> bool {
    let mut inversions = 0;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        rest &= rest - 1;
        inversions += (a >> (j + 1)).count_ones();
    }
    inversions % 2 == 1
}

fn write_term(f: &mut dyn fmt::Write, coef: &Scalar, body: &str, odd: &str, first: bool) -> fmt::Result {
    let body = if body.is_empty() { "1" } else { body };
    let body = match (body, odd) {
        ("1", "") => String::from("1"),
        ("1", o) => o.to_string(),
        (b, "") => b.to_string(),
        (b, o) => format!("{b}*{o}"),
    };
    let neg = coef.is_negative();
    match (first, neg) {
        (true, true) => f.write_str("-")?,
        (false, true) => f.write_str(" - ")?,
        (false, false) => f.write_str(" + ")?,
        (true, false) => {}
    }
    let a = coef.abs();
    if a.is_one() {
        f.write_str(&body)
    } else if body == "1" {
        write!(f, "{a}")
    } else {
        write!(f, "{a}*{body}")
    }
}

/// An element of a [`GradedModel`]: odd monomial mask ↦ reduced even
/// coefficient. Only meaningful together with its model.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MixedClass {
    terms: BTreeMap<u32, Polynomial>,
}

impl MixedClass {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Polynomial)> {
        self.terms.iter().map(|(m, p)| (*m, p))
    }

    pub fn coefficient(&self, mask: u32) -> Option<&Polynomial> {
        self.terms.get(&mask)
    }

    /// Masks by increasing exterior degree, then numerically.
    fn ordered(&self) -> Vec<(u32, &Polynomial)> {
        let mut v: Vec<(u32, &Polynomial)> = self.terms().collect();
        v.sort_by_key(|(m, _)| (m.count_ones(), *m));
        v
    }

    /// `(monomial, mask, coefficient)` triples.
    pub fn basis_terms(&self) -> impl Iterator<Item = (&Monomial, u32, &Scalar)> {
        self.terms.iter().flat_map(|(mask, p)| p.terms().map(move |(m, c)| (m, *mask, c)))
    }

    /// Total degrees occurring, given the model's odd degrees.
    pub fn degrees(&self, model: &GradedModel) -> Vec<u32> {
        let mut d: Vec<u32> = self.basis_terms().map(|(m, mask, _)| m.degree() + model.mask_degree(mask)).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn homogeneous_degree(&self, model: &GradedModel) -> Option<u32> {
        match self.degrees(model).as_slice() {
            [d] => Some(*d),
            _ => None,
        }
    }

    /// The exterior-degree-0 part.
    pub fn even_part(&self) -> Option<&Polynomial> {
        self.terms.get(&0)
    }

    /// Only exterior degree 0 occurs.
    pub fn is_even(&self) -> bool {
        self.terms.keys().all(|m| *m == 0)
    }

    /// A scalar multiple of `other`, with the scalar (`None` if not).
    pub fn ratio_to(&self, other: &MixedClass) -> Option<Scalar> {
        let (m, mask, c) = other.basis_terms().next()?;
        let mine = self.terms.get(&mask)?.coefficient(m);
        if mine.is_zero() {
            return None;
        }
        let r = mine.checked_div(c).ok()?;
        let same = self.terms.len() == other.terms.len()
            && other.terms.iter().all(|(k, p)| self.terms.get(k).is_some_and(|q| *q == p.scale(&r)));
        same.then_some(r)
    }

    /// Equal up to a nonzero scalar (both zero counts as equal).
    pub fn projectively_equal(&self, other: &MixedClass) -> bool {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => true,
            (false, false) => self.ratio_to(other).is_some(),
            _ => false,
        }
    }
}

/// Parsing target: identifiers resolve to generators of the tensor segment.
struct ClassTarget<'a> {
    model: &'a GradedModel,
}

impl ExprTarget for ClassTarget<'_> {
    type Value = MixedClass;

    fn integer(&self, n: &BigInt) -> MixedClass {
        let f = self.model.field();
        self.model.even_class(Polynomial::constant(self.model.ring(), f.from_bigint(n)))
    }

    fn variable(&self, name: &str, segment: usize) -> core::result::Result<MixedClass, String> {
        let m = self.model;
        let single = m.blocks() == 1;
        let matches = |v: &Variable| {
            if single || name.ends_with('\'') {
                v.name == name
            } else {
                v.block as usize == segment && v.display_name() == name
            }
        };
        if let Some(i) = m.ring().vars().iter().position(matches) {
            return Ok(m.even_class(Polynomial::var(m.ring(), i)));
        }
        if let Some(i) = m.odd.iter().position(matches) {
            return Ok(m.class([(1 << i, Polynomial::one(m.ring()))]));
        }
        // `v_i` names the second factor's copy of `u_i` in a two-factor model.
        if m.blocks() == 2 && segment == 0 {
            if let Some(rest) = name.strip_prefix('v') {
                let alias = format!("u{rest}");
                let second = |v: &Variable| v.block == 1 && v.display_name() == alias;
                if let Some(i) = m.ring().vars().iter().position(second) {
                    return Ok(m.even_class(Polynomial::var(m.ring(), i)));
                }
            }
        }
        if !single && segment as u32 >= m.blocks() {
            return Err(format!("tensor factor {} does not exist ({} factors)", segment + 1, m.blocks()));
        }
        Err(format!("unknown generator `{name}`"))
    }

    fn add(&self, a: &MixedClass, b: &MixedClass) -> MixedClass {
        self.model.add(a, b)
    }

    fn sub(&self, a: &MixedClass, b: &MixedClass) -> MixedClass {
        self.model.sub(a, b)
    }

    fn mul(&self, a: &MixedClass, b: &MixedClass) -> MixedClass {
        self.model.mul(a, b)
    }

    fn neg(&self, a: &MixedClass) -> MixedClass {
        self.model.scale(a, &-&self.model.field().one())
    }

    fn div(&self, a: &MixedClass, b: &MixedClass) -> core::result::Result<MixedClass, String> {
        match (b.is_even(), b.even_part()) {
            (true, Some(p)) => crate::exactalg::parse::constant_divisor(p).map(|inv| self.model.scale(a, &inv)),
            _ => Err("divisor must be a nonzero constant".into()),
        }
    }

    fn tensor_allowed(&self) -> bool {
        self.model.blocks() > 1
    }
}
