use alloc::format;
use alloc::vec::Vec;

use super::Polynomial;
use crate::{Error, Result};

/// Divided-difference coefficients `c_j` with
/// `f(u) − f(v) = Σ_j c_j·(u_j − v_j)`.
///
/// `pairs[j] = (u_j, v_j)` are variable indices in `f`'s ring; `order` is a
/// permutation of `0..pairs.len()` giving the sequence in which `u_j` is
/// replaced by `v_j`. The result is indexed by `j` (not by step) and the
/// identity is re-verified before returning.
pub fn telescoping_split(f: &Polynomial, pairs: &[(usize, usize)], order: &[usize]) -> Result<Vec<Polynomial>> {
    let l = pairs.len();
    let mut seen = alloc::vec![false; l];
    if order.len() != l || order.iter().any(|&j| j >= l || core::mem::replace(&mut seen[j], true)) {
        return Err(Error::Invalid(format!("{order:?} is not a permutation of 0..{l}")));
    }
    let ring = f.ring();
    if f.terms().any(|(m, _)| pairs.iter().any(|&(_, v)| m.exps()[v] > 0)) {
        return Err(Error::Invalid("telescoped polynomial must not involve the paired copy".into()));
    }
    let mut coeffs = alloc::vec![Polynomial::zero(ring); l];
    let mut current = f.clone();
    for &j in order {
        let (u, v) = pairs[j];
        let next = current.replace_variable(u, v);
        let diff = &current - &next;
        let step = &Polynomial::var(ring, u) - &Polynomial::var(ring, v);
        coeffs[j] = diff.exact_divide(&step)?;
        current = next;
    }
    // current = f(v); check Σ c_j (u_j − v_j) + f(v) = f(u).
    let mut check = current;
    for (j, &(u, v)) in pairs.iter().enumerate() {
        let step = &Polynomial::var(ring, u) - &Polynomial::var(ring, v);
        check = &check + &(&coeffs[j] * &step);
    }
    if &check != f {
        return Err(Error::Certificate("telescoping identity".into()));
    }
    Ok(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{parse_polynomial, Field, Ring, RingRef, Variable};
    use alloc::vec;

    fn ring() -> RingRef {
        Ring::new(
            Field::Rational,
            vec![
                Variable::new("u1", 0, 2),
                Variable::new("u2", 0, 2),
                Variable::new("v1", 1, 2),
                Variable::new("v2", 1, 2),
            ],
        )
        .unwrap()
    }

    const PAIRS: [(usize, usize); 2] = [(0, 2), (1, 3)];

    #[test]
    fn linear_and_constant() {
        let r = ring();
        let c = telescoping_split(&parse_polynomial("u1+u2", &r).unwrap(), &PAIRS, &[0, 1]).unwrap();
        assert_eq!(c, vec![Polynomial::one(&r), Polynomial::one(&r)]);
        let c = telescoping_split(&Polynomial::from_i64(&r, 5), &PAIRS, &[0, 1]).unwrap();
        assert!(c.iter().all(|p| p.is_zero()));
    }

    #[test]
    fn product_depends_on_order() {
        let r = ring();
        let f = parse_polynomial("u1*u2", &r).unwrap();
        let c = telescoping_split(&f, &PAIRS, &[0, 1]).unwrap();
        assert_eq!(c[0], parse_polynomial("u2", &r).unwrap());
        assert_eq!(c[1], parse_polynomial("v1", &r).unwrap());
        let c = telescoping_split(&f, &PAIRS, &[1, 0]).unwrap();
        assert_eq!(c[0], parse_polynomial("v2", &r).unwrap());
        assert_eq!(c[1], parse_polynomial("u1", &r).unwrap());
    }

    #[test]
    fn rejects_bad_order() {
        let r = ring();
        let f = parse_polynomial("u1", &r).unwrap();
        assert!(telescoping_split(&f, &PAIRS, &[0, 0]).is_err());
        let g = parse_polynomial("v1", &r).unwrap();
        assert!(telescoping_split(&g, &PAIRS, &[0, 1]).is_err());
    }
}
