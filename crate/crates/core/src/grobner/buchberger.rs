use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::exactalg::{Monomial, Polynomial};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BuchbergerOptions {
    /// Abort when an S-pair of larger degree would be formed.
    pub degree_cap: Option<u32>,
}

/// Fully reduces `p` modulo `basis` (leading monomials `leads`).
pub fn reduce(p: &Polynomial, basis: &[Polynomial], leads: &[Monomial]) -> Polynomial {
    let ring = p.ring().clone();
    let mut rest = p.clone();
    let mut out = Polynomial::zero(&ring);
    while let Some((m, c)) = rest.leading_term() {
        let (m, c) = (m.clone(), c.clone());
        match leads.iter().position(|l| l.divides(&m)) {
            Some(k) => {
                let t = leads[k].quotient_of(&m);
                let lc = basis[k].leading_coefficient().expect("nonzero");
                let coef = c.checked_div(lc).expect("nonzero leading coefficient");
                rest.add_scaled_shifted(&-&coef, &t, &basis[k]);
            }
            None => {
                rest.add_term(m.clone(), -&c);
                out.add_term(m, c);
            }
        }
    }
    out
}

/// Reduced Gröbner basis (monic, sorted by leading monomial) under the
/// ring's weighted degrevlex order.
pub fn buchberger(generators: &[Polynomial], opts: BuchbergerOptions) -> Result<Vec<Polynomial>> {
    let mut basis: Vec<Polynomial> = Vec::new();
    let mut leads: Vec<Monomial> = Vec::new();
    for g in generators {
        let r = reduce(g, &basis, &leads);
        if !r.is_zero() {
            let r = r.monic();
            leads.push(r.leading_monomial().expect("nonzero").clone());
            basis.push(r);
        }
    }
    let ring = match generators.first() {
        Some(g) => g.ring().clone(),
        None => return Ok(Vec::new()),
    };
    // pairs keyed by (lcm degree, i, j) so selection is deterministic
    let mut pairs: BTreeSet<(u32, usize, usize)> = BTreeSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.insert((ring.lcm(&leads[i], &leads[j]).degree(), i, j));
        }
    }
    while let Some(&(deg, i, j)) = pairs.iter().next() {
        pairs.remove(&(deg, i, j));
        if let Some(cap) = opts.degree_cap {
            if deg > cap {
                return Err(Error::DegreeCap { degree: deg, cap });
            }
        }
        if leads[i].coprime(&leads[j]) {
            continue;
        }
        let lcm = ring.lcm(&leads[i], &leads[j]);
        // chain criterion: some k with lead dividing the lcm and both pairs already handled
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && leads[k].divides(&lcm)
                && !pairs.contains(&pair_key(&ring, &leads, i, k))
                && !pairs.contains(&pair_key(&ring, &leads, j, k))
        });
        if chain {
            continue;
        }
        let one = ring.field().one();
        let mut s = basis[i].mul_term(&leads[i].quotient_of(&lcm), &one);
        s.add_scaled_shifted(&-&one, &leads[j].quotient_of(&lcm), &basis[j]);
        let r = reduce(&s, &basis, &leads);
        if r.is_zero() {
            continue;
        }
        let r = r.monic();
        let lm = r.leading_monomial().expect("nonzero").clone();
        let k = basis.len();
        for (a, la) in leads.iter().enumerate() {
            pairs.insert((ring.lcm(la, &lm).degree(), a, k));
        }
        leads.push(lm);
        basis.push(r);
    }
    Ok(interreduce(basis))
}

fn pair_key(ring: &crate::exactalg::RingRef, leads: &[Monomial], a: usize, b: usize) -> (u32, usize, usize) {
    let (i, j) = if a < b { (a, b) } else { (b, a) };
    (ring.lcm(&leads[i], &leads[j]).degree(), i, j)
}

fn interreduce(basis: Vec<Polynomial>) -> Vec<Polynomial> {
    let leads: Vec<Monomial> = basis.iter().map(|g| g.leading_monomial().unwrap().clone()).collect();
    let mut minimal: Vec<usize> = Vec::new();
    for (i, li) in leads.iter().enumerate() {
        let redundant = leads.iter().enumerate().any(|(j, lj)| j != i && lj.divides(li) && (lj != li || j < i));
        if !redundant {
            minimal.push(i);
        }
    }
    let mut out: Vec<Polynomial> = minimal.iter().map(|&i| basis[i].clone()).collect();
    for k in 0..out.len() {
        let others: Vec<Polynomial> = out.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, g)| g.clone()).collect();
        let other_leads: Vec<Monomial> = others.iter().map(|g| g.leading_monomial().unwrap().clone()).collect();
        let lead = out[k].leading_term().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let mut tail = out[k].clone();
        tail.add_term(lead.0.clone(), -&lead.1);
        let mut reduced = reduce(&tail, &others, &other_leads);
        reduced.add_term(lead.0, lead.1);
        out[k] = reduced.monic();
    }
    out.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    out
}
