//! Small pairs used by unit tests.

use alloc::string::String;
use alloc::vec::Vec;

use crate::exactalg::Field;
use crate::liecat::{GroupPresentation, PairDatum};

fn gens(list: &[(&str, u32)]) -> Vec<(String, u32)> {
    list.iter().map(|(n, d)| (String::from(*n), *d)).collect()
}

pub fn pair(
    name: &str,
    group: &str,
    g: &[(&str, u32)],
    h: &[(&str, u32)],
    rho: &[(&str, &str)],
    field: Field,
) -> PairDatum {
    PairDatum::new(
        name,
        field,
        GroupPresentation::new(group, gens(g), None).unwrap(),
        GroupPresentation::new(name, gens(h), None).unwrap(),
        rho.iter().map(|(x, p)| (String::from(*x), String::from(*p))).collect(),
        true,
    )
    .unwrap()
}

pub fn u2_t2() -> PairDatum {
    pair(
        "T2",
        "U2",
        &[("x1", 2), ("x2", 4)],
        &[("u1", 2), ("u2", 2)],
        &[("x1", "u1+u2"), ("x2", "u1*u2")],
        Field::Rational,
    )
}

pub fn u2_trivial() -> PairDatum {
    pair("U2", "U2", &[("x1", 2), ("x2", 4)], &[("c1", 2), ("c2", 4)], &[("x1", "c1"), ("x2", "c2")], Field::Rational)
}

pub fn sp1_t1() -> PairDatum {
    pair("T1", "Sp1", &[("q", 4)], &[("u", 2)], &[("q", "u^2")], Field::Rational)
}

#[allow(dead_code)]
pub fn u3_t3() -> PairDatum {
    pair(
        "T3",
        "U3",
        &[("x1", 2), ("x2", 4), ("x3", 6)],
        &[("u1", 2), ("u2", 2), ("u3", 2)],
        &[("x1", "u1+u2+u3"), ("x2", "u1*u2+u1*u3+u2*u3"), ("x3", "u1*u2*u3")],
        Field::Rational,
    )
}
