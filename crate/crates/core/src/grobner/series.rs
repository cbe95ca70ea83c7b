use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// `Π(1 − t^{aᵢ}) / Π(1 − t^{bⱼ})` together with its power-series expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoincareSeries {
    numerator: Vec<u32>,
    denominator: Vec<u32>,
}

impl PoincareSeries {
    pub fn new(numerator: Vec<u32>, denominator: Vec<u32>) -> PoincareSeries {
        let mut numerator = numerator;
        let mut denominator = denominator;
        numerator.sort_unstable();
        denominator.sort_unstable();
        PoincareSeries { numerator, denominator }
    }

    pub fn numerator_degrees(&self) -> &[u32] {
        &self.numerator
    }

    pub fn denominator_degrees(&self) -> &[u32] {
        &self.denominator
    }

    /// Coefficients of `t^0 … t^up_to`.
    pub fn expand(&self, up_to: u32) -> Vec<i128> {
        let n = up_to as usize + 1;
        let mut c = vec![0i128; n];
        c[0] = 1;
        for &a in &self.numerator {
            let a = a as usize;
            for k in (a..n).rev() {
                c[k] -= c[k - a];
            }
        }
        for &b in &self.denominator {
            let b = b as usize;
            for k in b..n {
                c[k] += c[k - b];
            }
        }
        c
    }

    /// The series as a polynomial, when the denominator divides the numerator.
    pub fn as_polynomial(&self) -> Option<Vec<i128>> {
        let top: u32 = self.numerator.iter().sum::<u32>();
        let shift: u32 = self.denominator.iter().sum::<u32>();
        if shift > top {
            return None;
        }
        let deg = top - shift;
        // past the numerator degree the coefficients obey a recurrence of order `shift`
        let reach = top + shift;
        let c = self.expand(reach);
        if c[deg as usize + 1..].iter().any(|&x| x != 0) {
            return None;
        }
        Some(c[..=deg as usize].to_vec())
    }

    /// Sum of all coefficients of a polynomial series.
    pub fn total(&self) -> Option<i128> {
        self.as_polynomial().map(|p| p.iter().sum())
    }

    pub fn has_negative_coefficient(&self, up_to: u32) -> bool {
        self.expand(up_to).iter().any(|&c| c < 0)
    }

    pub fn coefficient_string(&self, up_to: u32) -> String {
        let c = match self.as_polynomial() {
            Some(p) => p,
            None => self.expand(up_to),
        };
        let mut out = String::new();
        for (k, v) in c.iter().enumerate() {
            if *v == 0 {
                continue;
            }
            if !out.is_empty() {
                out.push_str(if *v < 0 { " - " } else { " + " });
            } else if *v < 0 {
                out.push('-');
            }
            let a = v.unsigned_abs();
            match (k, a) {
                (0, _) => out.push_str(&alloc::format!("{a}")),
                (_, 1) => out.push_str(&term(k)),
                _ => out.push_str(&alloc::format!("{a}{}", term(k))),
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        if self.as_polynomial().is_none() {
            out.push_str(" + …");
        }
        out
    }
}

fn term(k: usize) -> String {
    if k == 1 {
        "t".into()
    } else {
        alloc::format!("t^{k}")
    }
}

fn product(f: &mut fmt::Formatter<'_>, degrees: &[u32]) -> fmt::Result {
    if degrees.is_empty() {
        return f.write_str("1");
    }
    for d in degrees {
        if *d == 1 {
            f.write_str("(1-t)")?;
        } else {
            write!(f, "(1-t^{d})")?;
        }
    }
    Ok(())
}

impl fmt::Display for PoincareSeries {
    /// Closed form, e.g. `(1-t^2)(1-t^4)/((1-t^2)(1-t^2))`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        product(f, &self.numerator)?;
        f.write_str("/")?;
        if self.denominator.len() > 1 {
            f.write_str("(")?;
            product(f, &self.denominator)?;
            f.write_str(")")
        } else {
            product(f, &self.denominator)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flag_varieties() {
        let s = PoincareSeries::new(vec![2, 4], vec![2, 2]);
        assert_eq!(s.as_polynomial(), Some(vec![1, 0, 1]));
        assert_eq!(s.total(), Some(2));
        assert_eq!(s.coefficient_string(8), "1 + t^2");
        assert_eq!(alloc::format!("{s}"), "(1-t^2)(1-t^4)/((1-t^2)(1-t^2))");

        let s = PoincareSeries::new(vec![2, 4, 6], vec![2, 2, 2]);
        assert_eq!(s.as_polynomial(), Some(vec![1, 0, 2, 0, 2, 0, 1]));
        assert_eq!(s.total(), Some(6));
    }

    #[test]
    fn trivial_and_infinite() {
        let s = PoincareSeries::new(vec![4, 8], vec![4, 8]);
        assert_eq!(s.as_polynomial(), Some(vec![1]));
        let free = PoincareSeries::new(vec![], vec![2]);
        assert_eq!(free.as_polynomial(), None);
        assert_eq!(free.expand(4), vec![1, 0, 1, 0, 1]);
        let bad = PoincareSeries::new(vec![2, 2], vec![4]);
        assert!(bad.has_negative_coefficient(8));
    }
}
