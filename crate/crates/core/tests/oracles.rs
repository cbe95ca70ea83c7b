//! Independent oracles: brute-force determinants, symmetric-function
//! identities, dimension counts and small-prime arithmetic.

mod common;

use common::{elementary, sp1_torus, unitary_torus};
use whistle_core::exactalg::{parse_polynomial, Field, PolyMatrix, Polynomial, RingRef};
use whistle_core::grobner::QuotientRing;
use whistle_core::liecat::validate_pair;
use whistle_core::whistle::{build_models, jacobian_class, permutations};

fn leibniz_det(m: &PolyMatrix) -> Polynomial {
    let n = m.rows();
    let mut acc = Polynomial::zero(m.ring());
    for perm in permutations(n) {
        let inversions =
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| perm[i] > perm[j]).count();
        let mut term = Polynomial::one(m.ring());
        for (i, &j) in perm.iter().enumerate() {
            term = &term * m.get(i, j);
        }
        acc = if inversions % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

fn ring(names: &[&str]) -> RingRef {
    use whistle_core::exactalg::{Ring, Variable};
    Ring::new(Field::Rational, names.iter().map(|n| Variable::new(*n, 0, 2)).collect()).unwrap()
}

#[test]
fn determinant_matches_permutation_expansion() {
    let r = ring(&["a", "b", "c"]);
    let p = |s: &str| parse_polynomial(s, &r).unwrap();
    let rows = vec![
        vec![p("a + b"), p("c^2"), p("1"), p("a*b")],
        vec![p("2"), p("a - c"), p("b"), p("0")],
        vec![p("c"), p("1/3"), p("a^2 - b"), p("b*c")],
        vec![p("a"), p("b"), p("c"), p("a + b + c")],
    ];
    let m = PolyMatrix::from_rows(&r, rows).unwrap();
    assert_eq!(m.determinant().unwrap(), leibniz_det(&m));
    for n in 1..=4 {
        assert_eq!(PolyMatrix::identity(&r, n).determinant().unwrap(), Polynomial::one(&r));
    }
}

#[test]
fn jacobian_of_elementary_polynomials_is_vandermonde() {
    // det(∂e_i/∂u_j) = ∏_{i<j} (u_i − u_j)
    for n in 2..=4 {
        let pair = unitary_torus(n, Field::Rational);
        let fc = jacobian_class(&pair).unwrap();
        let mut v = Polynomial::one(pair.u_ring());
        for i in 1..=n {
            for j in i + 1..=n {
                v = &v * &parse_polynomial(&format!("u{i} - u{j}"), pair.u_ring()).unwrap();
            }
        }
        assert_eq!(fc.jacobian, v, "n = {n}");
        assert_eq!(leibniz_det(&fc.matrix), v);
    }
}

fn complete(vars: &[String], k: u32, r: &RingRef) -> Polynomial {
    // h_k as the sum of all monomials of degree k in `vars`
    fn rec(vars: &[String], k: u32, acc: String, out: &mut Vec<String>) {
        if k == 0 {
            out.push(if acc.is_empty() { "1".into() } else { acc });
            return;
        }
        let Some((first, rest)) = vars.split_first() else { return };
        let with = if acc.is_empty() { first.clone() } else { format!("{acc}*{first}") };
        rec(vars, k - 1, with, out);
        rec(rest, k, acc, out);
    }
    let mut terms = Vec::new();
    rec(vars, k, String::new(), &mut terms);
    parse_polynomial(&terms.join(" + "), r).unwrap()
}

#[test]
fn flag_variety_relations_from_symmetric_functions() {
    // h_i(u_i, …, u_n) lies in (e_1, …, e_n) and e_k(u) ↦ 0
    for n in 2..=4 {
        let pair = unitary_torus(n, Field::Rational);
        let q = pair.restriction_quotient().unwrap();
        for i in 1..=n {
            let vars: Vec<String> = (i..=n).map(|j| format!("u{j}")).collect();
            let h = complete(&vars, i as u32, pair.u_ring());
            assert!(q.is_zero(&h).unwrap(), "n = {n}, i = {i}");
        }
        for k in 1..=n {
            let e = parse_polynomial(&elementary(n, k, "u"), pair.u_ring()).unwrap();
            assert!(q.is_zero(&e).unwrap());
        }
        let below = complete(&["u".to_string() + &n.to_string()], n as u32 - 1, pair.u_ring());
        assert!(!q.is_zero(&below).unwrap(), "u_n^{} survives", n - 1);
    }
}

#[test]
fn quotient_dimensions_are_q_factorials() {
    // Σ dim = n!, graded by [n]_t! = ∏ (1 + t^2 + … + t^{2(k−1)})
    for n in 1..=4 {
        let pair = unitary_torus(n, Field::Rational);
        let basis = pair.restriction_quotient().unwrap().full_basis().unwrap();
        let mut expected = vec![1usize];
        for k in 1..=n {
            let mut next = vec![0; expected.len() + 2 * (k - 1)];
            for (d, c) in expected.iter().enumerate() {
                for s in 0..k {
                    next[d + 2 * s] += c;
                }
            }
            expected = next;
        }
        let mut counts = basis.counts();
        counts.resize(expected.len(), 0);
        assert_eq!(counts, expected, "n = {n}");
        assert_eq!(basis.total, Some((1..=n).product()));
    }
}

#[test]
fn small_prime_arithmetic() {
    // over F3 the degrees 2 and 4 are prime to 3, λ = −2 = 1
    let pair = unitary_torus(2, Field::prime(3).unwrap());
    let report = validate_pair(&pair, 8);
    assert!(report.usable() && report.composite_reliable(), "{report}");
    let w = build_models(&pair, 8).unwrap();
    assert_eq!(w.fundamental_class().unwrap().lambda, Field::prime(3).unwrap().one());
    let lp = w.loop_model();
    let top = lp.parse("y1*y2").unwrap();
    assert_eq!(w.dmu_whistle_op(&w.dmu_whistle(&top).unwrap()).unwrap(), lp.one());
    // over F3: U3 has x3 of degree 6, so the composite is flagged
    let u3 = unitary_torus(3, Field::prime(3).unwrap());
    assert!(!validate_pair(&u3, 12).composite_reliable());
    // in characteristic 2 the Jacobian u − (−u) = 2u of Sp1 vanishes
    let sp = sp1_torus().with_field(Field::prime_allow_two(2).unwrap()).unwrap();
    assert!(jacobian_class(&sp).is_err());
}

#[test]
fn free_quotient_counts_monomials() {
    let r = ring(&["a", "b", "c"]);
    let q = QuotientRing::free(&r);
    for d in 0..6u32 {
        let k = (d / 2) as usize;
        assert_eq!(q.standard_monomials(d).len(), if d % 2 == 0 { (k + 1) * (k + 2) / 2 } else { 0 });
    }
}
