use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::linalg::{DenseSolver, SolveError};
use super::quotient::QuotientRing;
use crate::exactalg::{poly::same_ring, Monomial, Polynomial, Scalar};
use crate::liecat::PairDatum;
use crate::{Error, Result};

#[derive(Clone, Debug)]
struct Block {
    /// `(basis index, coefficient monomial)` per unknown, grouped by basis index.
    unknowns: Vec<(usize, Monomial)>,
    rows: BTreeMap<Monomial, usize>,
    solver: DenseSolver,
}

/// Writes elements of a graded ring `T` as `Σ_b ι(c_b)·b` for a free basis
/// `b` over a coefficient ring `C → T`, one exact linear system per degree.
///
/// All systems up to the cap are solved at construction; the value is
/// immutable afterwards.
#[derive(Clone, Debug)]
pub struct FreeModuleDecomposer {
    coeff: QuotientRing,
    target: QuotientRing,
    images: Vec<Polynomial>,
    basis: Vec<Polynomial>,
    blocks: Vec<Block>,
}

impl FreeModuleDecomposer {
    /// `images[i]` is the image of the `i`-th coefficient variable in `target`.
    pub fn new(
        coeff: QuotientRing,
        target: QuotientRing,
        images: Vec<Polynomial>,
        basis: Vec<Polynomial>,
        cap: u32,
    ) -> Result<FreeModuleDecomposer> {
        if images.len() != coeff.ring().nvars() {
            return Err(Error::Invalid(format!(
                "{} images for {} coefficient variables",
                images.len(),
                coeff.ring().nvars()
            )));
        }
        let mut basis_degrees = Vec::with_capacity(basis.len());
        for (k, b) in basis.iter().enumerate() {
            if !same_ring(b.ring(), target.ring()) {
                return Err(Error::RingMismatch);
            }
            match b.homogeneous_degree() {
                Some(d) if !b.is_zero() => basis_degrees.push(d),
                _ => return Err(Error::NonHomogeneous(format!("basis element {k}: {b}"))),
            }
        }
        let mut image_cache: BTreeMap<Monomial, Polynomial> = BTreeMap::new();
        let mut blocks = Vec::with_capacity(cap as usize + 1);
        for d in 0..=cap {
            let mut unknowns = Vec::new();
            for (k, &bd) in basis_degrees.iter().enumerate() {
                if bd <= d {
                    for c in coeff.standard_monomials(d - bd) {
                        unknowns.push((k, c));
                    }
                }
            }
            let rows: BTreeMap<Monomial, usize> =
                target.standard_monomials(d).into_iter().enumerate().map(|(i, m)| (m, i)).collect();
            let field = target.ring().field();
            let mut columns = Vec::with_capacity(unknowns.len());
            for (k, c) in &unknowns {
                let img = match image_cache.get(c) {
                    Some(p) => p.clone(),
                    None => {
                        let p = Polynomial::monomial(coeff.ring(), c.clone(), field.one()).substitute(
                            &images,
                            target.ring(),
                            true,
                        )?;
                        image_cache.insert(c.clone(), p.clone());
                        p
                    }
                };
                let prod = target.reduce(&img.checked_mul(&basis[*k])?);
                let mut col = vec![field.zero(); rows.len()];
                for (m, v) in prod.terms() {
                    col[rows[m]] = v.clone();
                }
                columns.push(col);
            }
            let solver = DenseSolver::new(field, rows.len(), &columns).map_err(|e| match e {
                SolveError::Singular => {
                    Error::Decomposition(format!("the basis is not free over the coefficients in degree {d}"))
                }
                SolveError::Inconsistent => Error::Decomposition(format!("inconsistent system in degree {d}")),
            })?;
            if unknowns.len() != rows.len() {
                return Err(Error::Decomposition(format!(
                    "the basis does not span in degree {d}: {} unknowns for {} monomials",
                    unknowns.len(),
                    rows.len()
                )));
            }
            blocks.push(Block { unknowns, rows, solver });
        }
        Ok(FreeModuleDecomposer { coeff, target, images, basis, blocks })
    }

    pub fn cap(&self) -> u32 {
        self.blocks.len() as u32 - 1
    }

    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn coefficient_ring(&self) -> &QuotientRing {
        &self.coeff
    }

    pub fn target(&self) -> &QuotientRing {
        &self.target
    }

    fn components(&self, f: &Polynomial) -> Result<BTreeMap<u32, Vec<(usize, Scalar)>>> {
        if !same_ring(f.ring(), self.target.ring()) {
            return Err(Error::RingMismatch);
        }
        let nf = self.target.reduce(f);
        let mut by_degree: BTreeMap<u32, Vec<(usize, Scalar)>> = BTreeMap::new();
        for (m, c) in nf.terms() {
            let d = m.degree();
            let block = self.blocks.get(d as usize).ok_or(Error::DegreeCap { degree: d, cap: self.cap() })?;
            by_degree.entry(d).or_default().push((block.rows[m], c.clone()));
        }
        Ok(by_degree)
    }

    /// Coefficients `c_b`, indexed like the basis.
    pub fn decompose(&self, f: &Polynomial) -> Result<Vec<Polynomial>> {
        let mut out = vec![Polynomial::zero(self.coeff.ring()); self.basis.len()];
        for (d, rhs) in self.components(f)? {
            let block = &self.blocks[d as usize];
            let x = block.solver.solve(&rhs).map_err(|_| Error::Decomposition(format!("no solution in degree {d}")))?;
            for ((k, c), v) in block.unknowns.iter().zip(x) {
                out[*k].add_term(c.clone(), v);
            }
        }
        Ok(out)
    }

    /// Only the coefficient of basis element `which`.
    pub fn coefficient(&self, f: &Polynomial, which: usize) -> Result<Polynomial> {
        let mut out = Polynomial::zero(self.coeff.ring());
        for (d, rhs) in self.components(f)? {
            let block = &self.blocks[d as usize];
            let idx: Vec<usize> = (0..block.unknowns.len()).filter(|&i| block.unknowns[i].0 == which).collect();
            let x = block.solver.solve_partial(&rhs, &idx);
            for (i, v) in idx.into_iter().zip(x) {
                out.add_term(block.unknowns[i].1.clone(), v);
            }
        }
        Ok(out)
    }

    /// `Σ_b ι(c_b)·b` in normal form.
    pub fn reconstruct(&self, coefficients: &[Polynomial]) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(self.target.ring());
        for (c, b) in coefficients.iter().zip(&self.basis) {
            let img = c.substitute(&self.images, self.target.ring(), true)?;
            acc = acc.checked_add(&img.checked_mul(b)?)?;
        }
        Ok(self.target.reduce(&acc))
    }
}

/// `f = Σ_b ρ(c_b)·b` over `K[x]` for a pair's normal-set basis, returned
/// as `(b, c_b)` with zero coefficients kept; the reconstruction is checked.
pub fn graded_decompose(f: &Polynomial, pair: &PairDatum, basis: &[Monomial]) -> Result<Vec<(Monomial, Polynomial)>> {
    let d = f.homogeneous_degree().ok_or_else(|| Error::NonHomogeneous(format!("{f}")))?;
    let field = pair.field();
    let polys = basis.iter().map(|m| Polynomial::monomial(pair.u_ring(), m.clone(), field.one())).collect();
    let dec = FreeModuleDecomposer::new(
        QuotientRing::free(pair.x_ring()),
        QuotientRing::free(pair.u_ring()),
        pair.restriction().to_vec(),
        polys,
        d,
    )?;
    let coefficients = dec.decompose(f)?;
    if dec.reconstruct(&coefficients)? != *f {
        return Err(Error::Certificate(format!("decomposition of {f} does not reconstruct")));
    }
    Ok(basis.iter().cloned().zip(coefficients).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{parse_polynomial, Field, Ring, Variable};
    use crate::grobner::IdealPresentation;

    #[test]
    fn flag_variety_decomposition() {
        let u = Ring::new(Field::Rational, vec![Variable::new("u1", 0, 2), Variable::new("u2", 0, 2)]).unwrap();
        let x = Ring::new(Field::Rational, vec![Variable::new("x1", 0, 2), Variable::new("x2", 0, 4)]).unwrap();
        let p = |s: &str| parse_polynomial(s, &u).unwrap();
        let px = |s: &str| parse_polynomial(s, &x).unwrap();
        let images = vec![p("u1+u2"), p("u1*u2")];
        let q = QuotientRing::new(IdealPresentation::new(&u, images.clone()).unwrap()).unwrap();
        let basis: Vec<Polynomial> = q
            .full_basis()
            .unwrap()
            .iter()
            .map(|m| Polynomial::monomial(&u, m.clone(), Field::Rational.one()))
            .collect();
        assert_eq!(basis, vec![p("1"), p("u2")]);
        let dec = FreeModuleDecomposer::new(QuotientRing::free(&x), QuotientRing::free(&u), images, basis, 8).unwrap();
        assert_eq!(dec.decompose(&p("1")).unwrap(), vec![px("1"), px("0")]);
        assert_eq!(dec.decompose(&p("u1-u2")).unwrap(), vec![px("x1"), px("-2")]);
        assert_eq!(dec.coefficient(&p("u1-u2"), 1).unwrap(), px("-2"));
        let f = p("u1^3 + 5*u1*u2^2");
        let c = dec.decompose(&f).unwrap();
        assert_eq!(dec.reconstruct(&c).unwrap(), f);
        assert!(matches!(dec.decompose(&p("u1^5")), Err(Error::DegreeCap { .. })));
    }

    #[test]
    fn non_free_basis_is_rejected() {
        let u = Ring::new(Field::Rational, vec![Variable::new("u", 0, 2)]).unwrap();
        let x = Ring::new(Field::Rational, vec![Variable::new("x", 0, 4)]).unwrap();
        let p = |s: &str| parse_polynomial(s, &u).unwrap();
        // only 1 as basis over K[u^2]: u is not reached
        let r =
            FreeModuleDecomposer::new(QuotientRing::free(&x), QuotientRing::free(&u), vec![p("u^2")], vec![p("1")], 4);
        assert!(matches!(r, Err(Error::Decomposition(_))));
    }

    #[test]
    fn pair_level_decomposition() {
        let t = crate::testing::u2_t2();
        let basis: Vec<Monomial> = t.restriction_quotient().unwrap().full_basis().unwrap().iter().cloned().collect();
        let u = |s: &str| parse_polynomial(s, t.u_ring()).unwrap();
        let x = |s: &str| parse_polynomial(s, t.x_ring()).unwrap();
        let one = graded_decompose(&u("1"), &t, &basis).unwrap();
        assert_eq!(one[0].1, x("1"));
        assert!(one[1].1.is_zero());
        let c = graded_decompose(&u("u1 - u2"), &t, &basis).unwrap();
        assert_eq!((c[0].1.clone(), c[1].1.clone()), (x("x1"), x("-2")));
        assert!(graded_decompose(&u("u1 + 1"), &t, &basis).is_err());
    }
}
