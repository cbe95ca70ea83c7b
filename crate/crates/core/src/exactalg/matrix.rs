use alloc::vec::Vec;

use super::{Polynomial, RingRef};
use crate::{Error, Result};

/// A dense rectangular matrix of polynomials over one ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: RingRef,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn from_rows(ring: &RingRef, rows: Vec<Vec<Polynomial>>) -> Result<PolyMatrix> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut entries = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(Error::Invalid("ragged matrix rows".into()));
            }
            for p in row {
                if !super::poly::same_ring(p.ring(), ring) {
                    return Err(Error::RingMismatch);
                }
                entries.push(p);
            }
        }
        Ok(PolyMatrix { ring: ring.clone(), rows: nrows, cols: ncols, entries })
    }

    pub fn identity(ring: &RingRef, n: usize) -> PolyMatrix {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Polynomial::one(ring) } else { Polynomial::zero(ring) }).collect())
            .collect();
        PolyMatrix::from_rows(ring, rows).expect("square")
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn map(&self, f: impl Fn(&Polynomial) -> Polynomial) -> PolyMatrix {
        PolyMatrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination with row pivoting.
    pub fn determinant(&self) -> Result<Polynomial> {
        if self.rows != self.cols {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Polynomial::one(&self.ring));
        }
        let mut a: Vec<Vec<Polynomial>> = (0..n).map(|i| (0..n).map(|j| self.get(i, j).clone()).collect()).collect();
        let mut prev = Polynomial::one(&self.ring);
        let mut negate = false;
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        negate = !negate;
                    }
                    None => return Ok(Polynomial::zero(&self.ring)),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = num.exact_divide(&prev)?;
                }
            }
            prev = a[k][k].clone();
        }
        let det = a[n - 1][n - 1].clone();
        Ok(if negate { -det } else { det })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{parse_polynomial, Field, Ring, Variable};
    use alloc::vec;

    #[test]
    fn small_determinants() {
        let r = Ring::new(Field::Rational, vec![Variable::new("u2", 0, 2), Variable::new("v1", 1, 2)]).unwrap();
        let p = |s: &str| parse_polynomial(s, &r).unwrap();
        assert_eq!(PolyMatrix::identity(&r, 3).determinant().unwrap(), p("1"));
        let m = PolyMatrix::from_rows(&r, vec![vec![p("1"), p("1")], vec![p("u2"), p("v1")]]).unwrap();
        assert_eq!(m.determinant().unwrap(), p("v1 - u2"));
        let rep = PolyMatrix::from_rows(&r, vec![vec![p("u2"), p("v1")], vec![p("u2"), p("v1")]]).unwrap();
        assert!(rep.determinant().unwrap().is_zero());
        let piv = PolyMatrix::from_rows(&r, vec![vec![p("0"), p("1")], vec![p("1"), p("0")]]).unwrap();
        assert_eq!(piv.determinant().unwrap(), p("-1"));
        let rect = PolyMatrix::from_rows(&r, vec![vec![p("1"), p("0")]]).unwrap();
        assert!(matches!(rect.determinant(), Err(Error::NotSquare { .. })));
    }
}
