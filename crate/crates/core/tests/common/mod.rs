#![allow(dead_code)]

use whistle_core::exactalg::Field;
use whistle_core::liecat::{GroupPresentation, PairDatum};

fn gens(prefix: &str, degrees: &[u32]) -> Vec<(String, u32)> {
    degrees.iter().enumerate().map(|(i, d)| (format!("{prefix}{}", i + 1), *d)).collect()
}

/// `e_k(u_1, …, u_n)` as text.
pub fn elementary(n: usize, k: usize, var: &str) -> String {
    let mut terms = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        terms.push(idx.iter().map(|i| format!("{var}{}", i + 1)).collect::<Vec<_>>().join("*"));
        let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else { break };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
    terms.join(" + ")
}

/// `U(n) ⊃ Tⁿ` with `x_k ↦ e_k(u)`.
pub fn unitary_torus(n: usize, field: Field) -> PairDatum {
    let x_deg: Vec<u32> = (1..=n as u32).map(|i| 2 * i).collect();
    let rho = (1..=n).map(|k| (format!("x{k}"), elementary(n, k, "u"))).collect();
    PairDatum::new(
        format!("U{n}_T{n}"),
        field,
        GroupPresentation::new(format!("U{n}"), gens("x", &x_deg), Some((1..=n as u64).product())).unwrap(),
        GroupPresentation::new(format!("T{n}"), gens("u", &vec![2; n]), Some(1)).unwrap(),
        rho,
        true,
    )
    .unwrap()
}

/// `Sp(1) ⊃ T¹` with `q ↦ u²`.
pub fn sp1_torus() -> PairDatum {
    PairDatum::new(
        "Sp1_T1",
        Field::Rational,
        GroupPresentation::new("Sp1", vec![("q1".into(), 4)], Some(2)).unwrap(),
        GroupPresentation::new("T1", vec![("u".into(), 2)], Some(1)).unwrap(),
        vec![("q1".into(), "u^2".into())],
        true,
    )
    .unwrap()
}
