use alloc::format;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Largest modulus accepted for prime fields; products fit in `u128`.
pub const MAX_MODULUS: u64 = 1 << 32;

/// The ground field: ℚ or 𝔽_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// 𝔽_p for an odd prime `p`.
    pub fn prime(p: u64) -> Result<Field> {
        if p == 2 {
            return Err(Error::InvalidField("p = 2 requires the explicit override (Field::prime_allow_two)".into()));
        }
        Field::prime_allow_two(p)
    }

    /// 𝔽_p for any prime `p`, including 2.
    pub fn prime_allow_two(p: u64) -> Result<Field> {
        if p >= MAX_MODULUS {
            return Err(Error::InvalidField(format!("modulus {p} is too large")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match *self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Prime { residue: (n as i128).rem_euclid(p as i128) as u64, modulus: p },
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match *self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(n.clone())),
            Field::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(p));
                Scalar::Prime { residue: r.to_u64().expect("residue below modulus"), modulus: p }
            }
        }
    }

    /// Image of a rational number; fails when `p` divides the denominator.
    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        match *self {
            Field::Rational => Ok(Scalar::Rational(q.clone())),
            Field::Prime(_) => {
                let num = self.from_bigint(q.numer());
                let den = self.from_bigint(q.denom());
                let inv = den
                    .inv()
                    .ok_or_else(|| Error::InvalidField(format!("denominator of {q} vanishes modulo the prime")))?;
                Ok(&num * &inv)
            }
        }
    }

    /// Maps a scalar of another field into this one.
    pub fn convert(&self, s: &Scalar) -> Result<Scalar> {
        match s {
            Scalar::Rational(q) => self.from_rational(q),
            Scalar::Prime { modulus, .. } => match *self {
                Field::Prime(p) if p == *modulus => Ok(s.clone()),
                _ => Err(Error::FieldMismatch),
            },
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element. Rationals are kept in lowest terms with positive
/// denominator (guaranteed by `BigRational`); residues lie in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Prime { residue: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Prime { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Prime { residue, .. } => *residue == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Prime { residue, .. } => *residue == 1,
        }
    }

    /// Sign used by printers: rationals by sign, residues count as positive.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_negative(),
            Scalar::Prime { .. } => false,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Prime { residue, modulus } => {
                Scalar::Prime { residue: pow_mod(*residue, modulus - 2, *modulus), modulus: *modulus }
            }
        })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        let inv = other.inv().ok_or(Error::DivisionByZero)?;
        Ok(self * &inv)
    }

    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(q.abs()),
            s => s.clone(),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            _ => None,
        }
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn inv_mod(a: u64, m: u64) -> u64 {
    pow_mod(a, m - 2, m)
}

macro_rules! binop {
    ($tr:ident, $method:ident, $rat:expr, $modf:expr) => {
        impl core::ops::$tr<&Scalar> for &Scalar {
            type Output = Scalar;
            #[allow(clippy::suspicious_arithmetic_impl)]
            fn $method(self, rhs: &Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational($rat(a, b)),
                    (Scalar::Prime { residue: a, modulus: p }, Scalar::Prime { residue: b, modulus: q }) if p == q => {
                        Scalar::Prime { residue: $modf(*a, *b, *p), modulus: *p }
                    }
                    _ => panic!("scalar field mismatch"),
                }
            }
        }
        impl core::ops::$tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                core::ops::$tr::$method(&self, &rhs)
            }
        }
    };
}

binop!(Add, add, |a: &BigRational, b: &BigRational| a + b, |a: u64, b: u64, p: u64| ((a as u128 + b as u128)
    % p as u128) as u64);
binop!(Sub, sub, |a: &BigRational, b: &BigRational| a - b, |a: u64, b: u64, p: u64| ((a as u128 + p as u128
    - b as u128)
    % p as u128) as u64);
binop!(Mul, mul, |a: &BigRational, b: &BigRational| a * b, mul_mod);

impl core::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Prime { residue, modulus } => {
                Scalar::Prime { residue: (modulus - residue) % modulus, modulus: *modulus }
            }
        }
    }
}

impl core::ops::Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Prime { residue, .. } => write!(f, "{residue}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_stay_reduced() {
        let q = Field::Rational;
        let a = q.from_i64(6).checked_div(&q.from_i64(-4)).unwrap();
        let r = a.as_rational().unwrap();
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
    }

    #[test]
    fn prime_field_construction() {
        assert!(Field::prime(5).is_ok());
        assert!(Field::prime(9).is_err());
        assert!(Field::prime(2).is_err());
        assert!(Field::prime_allow_two(2).is_ok());
        let f = Field::prime(7).unwrap();
        assert_eq!(f.from_i64(-1), f.from_i64(6));
        let three = f.from_i64(3);
        assert!((&three * &three.inv().unwrap()).is_one());
    }

    #[test]
    fn rational_to_prime() {
        let f = Field::prime(5).unwrap();
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(f.from_rational(&half).unwrap(), f.from_i64(3));
        let fifth = BigRational::new(BigInt::from(1), BigInt::from(5));
        assert!(f.from_rational(&fifth).is_err());
    }
}
