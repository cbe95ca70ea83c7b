use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::ast::{Expr, Generator, GeneratorKind};
use crate::{Error, Result};

/// One boundary component.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Boundary {
    Circle,
    Interval(String, String),
}

impl fmt::Display for Boundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Boundary::Circle => f.write_str("circle"),
            Boundary::Interval(a, b) => write!(f, "interval({a},{b})"),
        }
    }
}

/// An ordered list of boundary components (left-to-right tensor order).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct BoundarySignature(pub Vec<Boundary>);

impl fmt::Display for BoundarySignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("∅");
        }
        for (i, b) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ⊔ ")?;
            }
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// Incoming and outgoing boundary of a generator.
pub fn generator_signature(g: &Generator) -> (BoundarySignature, BoundarySignature) {
    let a = &g.args;
    let iv = |x: &String, y: &String| Boundary::Interval(x.clone(), y.clone());
    let (i, o) = match g.kind {
        GeneratorKind::Whistle => (vec![iv(&a[0], &a[0])], vec![Boundary::Circle]),
        GeneratorKind::Cowhistle => (vec![Boundary::Circle], vec![iv(&a[0], &a[0])]),
        GeneratorKind::Upsilon => (vec![iv(&a[0], &a[1]), iv(&a[1], &a[2])], vec![iv(&a[0], &a[2])]),
        GeneratorKind::Coupsilon => (vec![iv(&a[0], &a[2])], vec![iv(&a[0], &a[1]), iv(&a[1], &a[2])]),
        GeneratorKind::CylClosed | GeneratorKind::Bv => (vec![Boundary::Circle], vec![Boundary::Circle]),
        GeneratorKind::CylOpen => (vec![iv(&a[0], &a[1])], vec![iv(&a[0], &a[1])]),
        GeneratorKind::PantsPlug => (vec![Boundary::Circle, Boundary::Circle], vec![Boundary::Circle]),
    };
    (BoundarySignature(i), BoundarySignature(o))
}

/// `(in, out)` of a word. In `a; b` the outgoing boundary of `b` is glued
/// to the incoming boundary of `a`, so `in(a; b) = in(b)` and
/// `out(a; b) = out(a)`.
pub fn check_signature(e: &Expr) -> Result<(BoundarySignature, BoundarySignature)> {
    match e {
        Expr::Gen(g) => Ok(generator_signature(g)),
        Expr::Union(xs) => {
            let mut i = Vec::new();
            let mut o = Vec::new();
            for x in xs {
                let (a, b) = check_signature(x)?;
                i.extend(a.0);
                o.extend(b.0);
            }
            Ok((BoundarySignature(i), BoundarySignature(o)))
        }
        Expr::Seq(xs) => {
            let (mut input, output) = check_signature(&xs[0])?;
            for (prev, x) in xs.iter().zip(&xs[1..]) {
                let (i, o) = check_signature(x)?;
                if o != input {
                    return Err(Error::Signature(mismatch(prev, &input, x, &o)));
                }
                input = i;
            }
            Ok((input, output))
        }
    }
}

fn mismatch(a: &Expr, a_in: &BoundarySignature, b: &Expr, b_out: &BoundarySignature) -> String {
    let labels = a_in.0.iter().zip(&b_out.0).find(|(x, y)| x != y);
    let detail = match labels {
        Some((Boundary::Interval(p, q), Boundary::Interval(r, s))) => format!("; labels ({r},{s}) meet ({p},{q})"),
        _ => String::new(),
    };
    format!("`{b}` ends in {b_out} but `{a}` starts from {a_in}{detail}")
}
