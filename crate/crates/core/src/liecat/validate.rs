use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;

use super::PairDatum;
use crate::exactalg::Field;
use crate::grobner::{koszul_homology_dims, QuotientRing};
use crate::whistle::jacobian_class_in;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    /// Recorded but not a reason to reject the pair.
    Flag,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "FAILED",
            Outcome::Flag => "flag",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub outcome: Outcome,
    pub mandatory: bool,
    pub detail: String,
}

pub const RANK: &str = "rank equality";
pub const DEGREES: &str = "degree preservation";
pub const FINITE: &str = "finite quotient";
pub const REGULAR: &str = "regular-sequence";
pub const DIFFERENCE: &str = "difference sequence regular";
pub const POINCARE: &str = "poincare match";
pub const WEYL: &str = "weyl order";
pub const FUNDAMENTAL: &str = "fundamental class";
pub const COPRIME: &str = "degree coprimality";
pub const TORSION: &str = "torsion-free assertion";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub pair: String,
    pub field: Field,
    pub cap: u32,
    pub checks: Vec<Check>,
    /// Dimension of `H*(G/H)` when the quotient is finite.
    pub quotient_dim: Option<usize>,
}

impl ValidationReport {
    /// All mandatory checks pass.
    pub fn usable(&self) -> bool {
        self.checks.iter().all(|c| !c.mandatory || c.outcome == Outcome::Pass)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn passed(&self, name: &str) -> bool {
        self.check(name).is_some_and(|c| c.outcome == Outcome::Pass)
    }

    /// `W∘W^op` is only computed when the degrees are prime to the
    /// characteristic and the fundamental class survives.
    pub fn composite_reliable(&self) -> bool {
        self.usable() && self.passed(COPRIME) && self.passed(FUNDAMENTAL)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.mandatory && c.outcome != Outcome::Pass)
    }

    /// One-line status, e.g. `valid, dim G/H quotient = 2`.
    pub fn summary(&self) -> String {
        let mut s = match self.failures().next() {
            Some(c) => format!("{} check FAILED", c.name),
            None => match self.quotient_dim {
                Some(d) => format!("valid, dim G/H quotient = {d}"),
                None => "valid".to_string(),
            },
        };
        if self.usable() && !self.composite_reliable() {
            s.push_str(", composite-unreliable");
        }
        s
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} over {} (cap {}): {}", self.pair, self.field, self.cap, self.summary())?;
        for c in &self.checks {
            let tag = if c.mandatory { "" } else { " (advisory)" };
            writeln!(f, "  {:<28} {:<6}{tag} {}", c.name, c.outcome, c.detail)?;
        }
        Ok(())
    }
}

struct Builder(Vec<Check>);

impl Builder {
    fn push(&mut self, name: &'static str, outcome: Outcome, mandatory: bool, detail: impl Into<String>) {
        self.0.push(Check { name, outcome, mandatory, detail: detail.into() });
    }

    fn result(&mut self, name: &'static str, ok: bool, detail: impl Into<String>) {
        self.push(name, if ok { Outcome::Pass } else { Outcome::Fail }, true, detail);
    }

    fn skipped(&mut self, name: &'static str, why: &str) {
        self.push(name, Outcome::Fail, true, format!("not run: {why}"));
    }
}

/// Runs every hypothesis check through internal degree `cap`. Failures are
/// report entries, never errors.
pub fn validate_pair(pair: &PairDatum, cap: u32) -> ValidationReport {
    let mut b = Builder(Vec::new());
    let l_g = pair.group().rank();
    let l_h = pair.subgroup().rank();
    b.result(
        RANK,
        l_g == l_h,
        format!("{l_g} generators for {}, {l_h} for {}", pair.group().name(), pair.subgroup().name()),
    );
    let degree_problems: Vec<String> = pair
        .group()
        .generators()
        .iter()
        .zip(pair.restriction())
        .filter(|((_, d), img)| img.is_zero() || img.homogeneous_degree() != Some(*d))
        .map(|((x, d), img)| format!("ρ({x}) = {img} is not homogeneous of degree {d}"))
        .collect();
    b.result(
        DEGREES,
        degree_problems.is_empty(),
        if degree_problems.is_empty() {
            "every ρ(x_i) is homogeneous of degree deg x_i".to_string()
        } else {
            degree_problems.join("; ")
        },
    );
    let shape_ok = l_g == l_h && degree_problems.is_empty();

    let quotient = if shape_ok { pair.restriction_quotient().ok() } else { None };
    let mut quotient_dim = None;
    if let Some(q) = &quotient {
        quotient_dim = q.full_basis().and_then(|bs| bs.total);
    }

    match &quotient {
        Some(_) => {
            let free = QuotientRing::free(pair.u_ring());
            match koszul_homology_dims(pair.restriction(), &free, cap) {
                Ok(h) => match h.first_nonzero() {
                    None if quotient_dim.is_some() => {
                        b.result(REGULAR, true, format!("H_i = 0 for i > 0 through degree {cap}"))
                    }
                    None => b.result(
                        REGULAR,
                        false,
                        format!("Koszul homology vanishes through degree {cap} but the quotient is infinite"),
                    ),
                    Some((i, d)) => b.result(REGULAR, false, format!("H_{i} ≠ 0 in degree {d}")),
                },
                Err(e) => b.result(REGULAR, false, e.to_string()),
            }
            match quotient_dim {
                Some(d) => b.result(FINITE, true, format!("dimension {d}")),
                None => b.result(FINITE, false, "H*(BH)/(ρ(x)) is infinite-dimensional"),
            }
            let diff = pair
                .difference_sequence()
                .and_then(|(ring, seq)| koszul_homology_dims(&seq, &QuotientRing::free(&ring), cap));
            match diff {
                Ok(h) => match h.first_nonzero() {
                    None => b.result(DIFFERENCE, true, format!("H_i = 0 for i > 0 through degree {cap}")),
                    Some((i, d)) => b.result(DIFFERENCE, false, format!("H_{i} ≠ 0 in degree {d}")),
                },
                Err(e) => b.result(DIFFERENCE, false, e.to_string()),
            }
        }
        None => {
            b.skipped(REGULAR, "rank or degree check failed");
            b.skipped(FINITE, "rank or degree check failed");
            b.skipped(DIFFERENCE, "rank or degree check failed");
        }
    }

    let series = pair.poincare_series();
    match (&quotient, series.as_polynomial()) {
        (Some(q), Some(poly)) if quotient_dim.is_some() => {
            let mut counts: Vec<i128> = q.full_basis().unwrap().counts().into_iter().map(|c| c as i128).collect();
            while counts.last() == Some(&0) {
                counts.pop();
            }
            let matches = poly == counts;
            b.result(POINCARE, matches, format!("{} = {}", series, series.coefficient_string(cap)));
        }
        _ => {
            let neg = series.has_negative_coefficient(cap.max(1));
            b.result(
                POINCARE,
                false,
                if neg {
                    format!("{series} has negative coefficients")
                } else {
                    format!("{series} is not a polynomial")
                },
            );
        }
    }

    match (pair.group().weyl_order(), pair.subgroup().weyl_order(), quotient_dim) {
        (Some(wg), Some(wh), Some(dim)) => {
            let ok = wg % wh == 0 && (wg / wh) as usize == dim;
            b.result(WEYL, ok, format!("|W_G|/|W_H| = {wg}/{wh}, quotient dimension {dim}"));
        }
        (Some(_), Some(_), None) => b.result(WEYL, false, "quotient is not finite"),
        _ => b.push(WEYL, Outcome::Pass, false, "no Weyl orders given"),
    }

    match &quotient {
        Some(q) if quotient_dim.is_some() => match jacobian_class_in(pair, q) {
            Ok(fc) => b.push(
                FUNDAMENTAL,
                Outcome::Pass,
                false,
                format!("NF(det ∂ρ(x)/∂u) = {}, λ = {}", fc.normal_form, fc.lambda),
            ),
            Err(e) => b.push(FUNDAMENTAL, Outcome::Flag, false, e.to_string()),
        },
        _ => b.push(FUNDAMENTAL, Outcome::Flag, false, "not run: quotient unavailable"),
    }

    match pair.field() {
        Field::Rational => b.push(COPRIME, Outcome::Pass, false, "characteristic 0"),
        Field::Prime(p) => {
            let bad: Vec<String> = pair
                .group()
                .generators()
                .iter()
                .filter(|(_, d)| (*d as u64).gcd(&p) != 1)
                .map(|(x, d)| format!("deg {x} = {d}"))
                .collect();
            if bad.is_empty() {
                b.push(COPRIME, Outcome::Pass, false, format!("every degree is prime to {p}"));
            } else {
                b.push(
                    COPRIME,
                    Outcome::Flag,
                    false,
                    format!("composite-unreliable: {} not prime to {p}", bad.join(", ")),
                );
            }
        }
    }

    if pair.torsion_free_asserted() {
        b.push(TORSION, Outcome::Pass, false, "asserted by the catalog (not computed)");
    } else {
        b.push(TORSION, Outcome::Flag, false, "not asserted by the catalog");
    }

    ValidationReport { pair: pair.name().to_string(), field: pair.field(), cap, checks: b.0, quotient_dim }
}
