//! Seeded randomized spot checks run by `validate` on top of the exact
//! hypothesis checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use whistle_core::exactalg::{Monomial, Polynomial, RingRef};
use whistle_core::grobner::{graded_decompose, QuotientRing};
use whistle_core::liecat::{Check, Outcome, PairDatum};

pub const NF_LINEARITY: &str = "normal form linearity";
pub const DECOMPOSITION: &str = "decomposition round trip";

const TRIALS: usize = 8;

fn random_poly(rng: &mut ChaCha8Rng, ring: &RingRef, monomials: &[Monomial]) -> Polynomial {
    let field = ring.field();
    let mut terms = Vec::new();
    for m in monomials {
        if rng.gen_bool(0.6) {
            terms.push((m.clone(), field.from_i64(rng.gen_range(-5..=5))));
        }
    }
    Polynomial::from_terms(ring, terms)
}

fn check(name: &'static str, failure: Option<String>, passed: &str) -> Check {
    Check {
        name,
        outcome: if failure.is_some() { Outcome::Fail } else { Outcome::Pass },
        mandatory: false,
        detail: failure.unwrap_or_else(|| passed.to_string()),
    }
}

/// Linearity of the normal form modulo `(ρ(x))` and reconstruction of random
/// homogeneous classes from their free-module coefficients. The second check
/// only runs on pairs whose mandatory checks passed.
pub fn spot_checks(pair: &PairDatum, cap: u32, seed: u64, usable: bool) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ring = pair.u_ring();
    let field = pair.field();
    let free = QuotientRing::free(ring);
    let degrees: Vec<u32> = (0..=cap).filter(|&d| !free.standard_monomials(d).is_empty()).collect();
    let mut out = Vec::new();
    let quotient = match pair.restriction_quotient() {
        Ok(q) => q,
        Err(e) => {
            out.push(check(NF_LINEARITY, Some(format!("not run: {e}")), ""));
            return out;
        }
    };
    let mut failure = None;
    for _ in 0..TRIALS {
        let d = degrees[rng.gen_range(0..degrees.len())];
        let mons = free.standard_monomials(d);
        let a = random_poly(&mut rng, ring, &mons);
        let b = random_poly(&mut rng, ring, &mons);
        let c = field.from_i64(rng.gen_range(1..=7));
        let lhs = quotient.normal_form(&a.checked_add(&b.scale(&c)).expect("same ring"));
        let rhs = quotient
            .normal_form(&a)
            .and_then(|na| quotient.normal_form(&b).map(|nb| na.checked_add(&nb.scale(&c)).expect("same ring")));
        match (lhs, rhs) {
            (Ok(l), Ok(r)) if l == r => {}
            (Ok(l), Ok(r)) => failure = Some(format!("NF(a + {c}·b) = {l} but NF(a) + {c}·NF(b) = {r}")),
            (Err(e), _) | (_, Err(e)) => failure = Some(e.to_string()),
        }
        if failure.is_some() {
            break;
        }
    }
    out.push(check(NF_LINEARITY, failure, &format!("{TRIALS} random pairs, seed {seed}")));
    if !usable {
        return out;
    }
    let basis: Vec<Monomial> = match quotient.full_basis() {
        Some(b) => b.iter().cloned().collect(),
        None => return out,
    };
    let mut failure = None;
    for _ in 0..TRIALS {
        let d = degrees[rng.gen_range(0..degrees.len())];
        let f = random_poly(&mut rng, ring, &free.standard_monomials(d));
        if f.is_zero() {
            continue;
        }
        if let Err(e) = graded_decompose(&f, pair, &basis) {
            failure = Some(format!("{f}: {e}"));
            break;
        }
    }
    out.push(check(DECOMPOSITION, failure, &format!("{TRIALS} random classes, seed {seed}")));
    out
}
