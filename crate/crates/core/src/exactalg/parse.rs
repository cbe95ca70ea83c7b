//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar: integer literals, identifiers `[A-Za-z][A-Za-z0-9_]*`, binary
//! `+ - * / ^` (division only by nonzero constants), unary minus and parentheses; `^` binds tighter than `*`, which
//! binds tighter than `+`/`-`. Targets that opt in also accept the tensor
//! separator `⊗` (or the literal `(x)`), binding between `*` and `+`; the
//! k-th tensor segment of a term is resolved in tensor factor k.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{Polynomial, RingRef};
use crate::{Error, Result};

/// What a parsed expression evaluates into.
pub trait ExprTarget {
    type Value: Clone;

    fn integer(&self, n: &BigInt) -> Self::Value;
    /// Resolves an identifier appearing in tensor segment `segment`.
    fn variable(&self, name: &str, segment: usize) -> core::result::Result<Self::Value, String>;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn sub(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn neg(&self, a: &Self::Value) -> Self::Value;
    /// Division by a nonzero constant.
    fn div(&self, _a: &Self::Value, _b: &Self::Value) -> core::result::Result<Self::Value, String> {
        Err("division is not supported here".into())
    }

    fn tensor_allowed(&self) -> bool {
        false
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Tensor,
}

fn lex(text: &str, tensor: bool) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'+' => {
                out.push((i, Tok::Plus));
                i += 1
            }
            b'-' => {
                out.push((i, Tok::Minus));
                i += 1
            }
            b'*' => {
                out.push((i, Tok::Star));
                i += 1
            }
            b'/' => {
                out.push((i, Tok::Slash));
                i += 1
            }
            b'^' => {
                out.push((i, Tok::Caret));
                i += 1
            }
            b'(' if tensor && text[i..].starts_with("(x)") => {
                out.push((i, Tok::Tensor));
                i += 3
            }
            b'(' => {
                out.push((i, Tok::LParen));
                i += 1
            }
            b')' => {
                out.push((i, Tok::RParen));
                i += 1
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("digits");
                out.push((start, Tok::Int(n)));
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                while i < bytes.len() && bytes[i] == b'\'' {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
            }
            _ if tensor && text[i..].starts_with('⊗') => {
                out.push((i, Tok::Tensor));
                i += '⊗'.len_utf8();
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(Error::Parse { offset: i, message: format!("unexpected character `{ch}`") });
            }
        }
    }
    Ok(out)
}

struct Parser<'a, T: ExprTarget> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    target: &'a T,
}

impl<'a, T: ExprTarget> Parser<'a, T> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn err<V>(&self, message: impl Into<String>) -> Result<V> {
        Err(Error::Parse { offset: self.offset(), message: message.into() })
    }

    fn sum(&mut self, seg: usize) -> Result<T::Value> {
        let mut acc = self.tensor_term(seg)?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let rhs = self.tensor_term(seg)?;
                    acc = self.target.add(&acc, &rhs);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let rhs = self.tensor_term(seg)?;
                    acc = self.target.sub(&acc, &rhs);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn tensor_term(&mut self, seg: usize) -> Result<T::Value> {
        let mut acc = self.product(seg)?;
        let mut k = seg;
        while let Some(Tok::Tensor) = self.peek() {
            self.pos += 1;
            k += 1;
            let rhs = self.product(k)?;
            acc = self.target.mul(&acc, &rhs);
        }
        Ok(acc)
    }

    fn product(&mut self, seg: usize) -> Result<T::Value> {
        let mut acc = self.unary(seg)?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let rhs = self.unary(seg)?;
                    acc = self.target.mul(&acc, &rhs);
                }
                Some(Tok::Slash) => {
                    let offset = self.offset();
                    self.pos += 1;
                    let rhs = self.unary(seg)?;
                    acc = self.target.div(&acc, &rhs).map_err(|message| Error::Parse { offset, message })?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self, seg: usize) -> Result<T::Value> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                let v = self.unary(seg)?;
                Ok(self.target.neg(&v))
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary(seg)
            }
            _ => self.power(seg),
        }
    }

    fn power(&mut self, seg: usize) -> Result<T::Value> {
        let base = self.atom(seg)?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            let e = match self.peek() {
                Some(Tok::Int(n)) => match n.to_u32() {
                    Some(e) => e,
                    None => return self.err("exponent too large"),
                },
                _ => return self.err("expected a nonnegative integer exponent"),
            };
            self.pos += 1;
            let mut acc = self.target.integer(&BigInt::from(1));
            for _ in 0..e {
                acc = self.target.mul(&acc, &base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self, seg: usize) -> Result<T::Value> {
        let offset = self.offset();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(self.target.integer(&n))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                self.target.variable(&name, seg).map_err(|message| Error::Parse { offset, message })
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let v = self.sum(seg)?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(v)
                    }
                    _ => self.err("expected `)`"),
                }
            }
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses `text` into the target's value type.
pub fn parse_expression<T: ExprTarget>(text: &str, target: &T) -> Result<T::Value> {
    let toks = lex(text, target.tensor_allowed())?;
    let mut p = Parser { toks, pos: 0, end: text.len(), target };
    if p.toks.is_empty() {
        return p.err("empty expression");
    }
    let v = p.sum(0)?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(v)
}

struct RingTarget<'a> {
    ring: &'a RingRef,
}

impl ExprTarget for RingTarget<'_> {
    type Value = Polynomial;

    fn integer(&self, n: &BigInt) -> Polynomial {
        Polynomial::constant(self.ring, self.ring.field().from_bigint(n))
    }

    fn variable(&self, name: &str, _segment: usize) -> core::result::Result<Polynomial, String> {
        Polynomial::var_named(self.ring, name).map_err(|_| format!("unknown variable `{name}`"))
    }

    fn add(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        a + b
    }

    fn sub(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        a - b
    }

    fn mul(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        a * b
    }

    fn neg(&self, a: &Polynomial) -> Polynomial {
        -a
    }

    fn div(&self, a: &Polynomial, b: &Polynomial) -> core::result::Result<Polynomial, String> {
        constant_divisor(b).map(|inv| a.scale(&inv))
    }
}

/// The inverse of a nonzero constant polynomial.
pub(crate) fn constant_divisor(b: &Polynomial) -> core::result::Result<super::Scalar, String> {
    if !b.is_constant() || b.is_zero() {
        return Err("divisor must be a nonzero constant".into());
    }
    b.constant_term().inv().ok_or_else(|| "division by zero".to_string())
}

/// Parses a polynomial in the variables of `ring`.
pub fn parse_polynomial(text: &str, ring: &RingRef) -> Result<Polynomial> {
    parse_expression(text, &RingTarget { ring })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{Field, Ring, Variable};
    use alloc::vec;

    fn ring() -> RingRef {
        Ring::new(Field::Rational, vec![Variable::new("x1", 0, 2), Variable::new("x2", 0, 4)]).unwrap()
    }

    #[test]
    fn precedence() {
        let r = ring();
        let p = parse_polynomial("1 + 2*x1^2 - -x2", &r).unwrap();
        let q = parse_polynomial("(2*(x1*x1)) + x2 + 1", &r).unwrap();
        assert_eq!(p, q);
        let neg = parse_polynomial("-x1^2", &r).unwrap();
        assert_eq!(neg, -parse_polynomial("x1^2", &r).unwrap());
    }

    #[test]
    fn errors_carry_offsets() {
        let r = ring();
        match parse_polynomial("x1 + y", &r) {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 5),
            other => panic!("{other:?}"),
        }
        match parse_polynomial("(x1", &r) {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 3),
            other => panic!("{other:?}"),
        }
        assert!(parse_polynomial("", &r).is_err());
        assert!(parse_polynomial("x1 ⊗ x2", &r).is_err());
    }

    #[test]
    fn display_round_trip() {
        let r = ring();
        let p = parse_polynomial("3*x1^2*x2 - x2^2 + 7 - x1", &r).unwrap();
        let printed = alloc::format!("{p}");
        assert_eq!(parse_polynomial(&printed, &r).unwrap(), p);
        assert_eq!(printed, "3*x1^2*x2 - x2^2 - x1 + 7");
    }
}
