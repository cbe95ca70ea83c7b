//! Exact linear algebra over a field: sparse rank and dense solving.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::exactalg::{inv_mod, mul_mod, Field, Scalar};

/// Field operations used by the elimination routines.
pub trait FieldOps {
    type Elem: Clone;
    fn zero(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
}

pub struct ExactOps(pub Field);

impl FieldOps for ExactOps {
    type Elem = Scalar;
    fn zero(&self) -> Scalar {
        self.0.zero()
    }
    fn is_zero(&self, a: &Scalar) -> bool {
        a.is_zero()
    }
    fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a * b
    }
    fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a - b
    }
    fn inv(&self, a: &Scalar) -> Scalar {
        a.inv().expect("pivot is nonzero")
    }
}

/// Arithmetic modulo a prime below 2^32.
pub struct ModOps(pub u64);

impl FieldOps for ModOps {
    type Elem = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.0)
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.0 - b) % self.0
    }
    fn inv(&self, a: &u64) -> u64 {
        inv_mod(*a, self.0)
    }
}

pub type SparseRow<E> = Vec<(u32, E)>;

/// Reduction of an exact scalar modulo `p`; `None` when a denominator is
/// divisible by `p`.
pub fn to_mod(s: &Scalar, p: u64) -> Option<u64> {
    match s {
        Scalar::Rational(q) => {
            let pm = BigInt::from(p);
            let n = q.numer().mod_floor(&pm).to_u64()?;
            let d = q.denom().mod_floor(&pm).to_u64()?;
            if d == 0 {
                return None;
            }
            Some(mul_mod(n, inv_mod(d, p), p))
        }
        Scalar::Prime { residue, .. } => Some(*residue),
    }
}

/// Rank of sparse rows over the field of their entries. Over ℚ a modular
/// rank equal to `ceiling` (an a-priori upper bound) is accepted as exact,
/// since reduction mod p never increases rank.
pub fn certified_rank(field: Field, ncols: usize, rows: &[SparseRow<Scalar>], ceiling: usize) -> usize {
    let modular = |p: u64| -> Option<usize> {
        let mut ech = SparseEchelon::new(ModOps(p), ncols);
        for r in rows {
            let mut mr: SparseRow<u64> = Vec::with_capacity(r.len());
            for (c, v) in r {
                let x = to_mod(v, p)?;
                if x != 0 {
                    mr.push((*c, x));
                }
            }
            ech.insert(&mr);
        }
        Some(ech.rank())
    };
    match field {
        Field::Prime(p) => modular(p).expect("residues"),
        Field::Rational => match modular(crate::grobner::CERTIFICATE_PRIME) {
            Some(r) if r == ceiling => r,
            _ => sparse_rank(ExactOps(field), ncols, rows),
        },
    }
}

/// Incremental row echelon form over sparse rows with `ncols` columns.
pub struct SparseEchelon<F: FieldOps> {
    ops: F,
    ncols: usize,
    pivot_of_col: Vec<Option<usize>>,
    pivots: Vec<SparseRow<F::Elem>>,
    scratch: Vec<F::Elem>,
}

impl<F: FieldOps> SparseEchelon<F> {
    pub fn new(ops: F, ncols: usize) -> Self {
        let zero = ops.zero();
        SparseEchelon { ops, ncols, pivot_of_col: vec![None; ncols], pivots: Vec::new(), scratch: vec![zero; ncols] }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` against the current pivots; returns whether it was
    /// independent (and is now a pivot).
    pub fn insert(&mut self, row: &[(u32, F::Elem)]) -> bool {
        if row.is_empty() {
            return false;
        }
        let mut first = self.ncols;
        for (c, v) in row {
            let c = *c as usize;
            self.scratch[c] = v.clone();
            first = first.min(c);
        }
        let mut c = first;
        let mut result = None;
        while c < self.ncols {
            if self.ops.is_zero(&self.scratch[c]) {
                c += 1;
                continue;
            }
            match self.pivot_of_col[c] {
                Some(p) => {
                    let factor = self.scratch[c].clone();
                    for (pc, pv) in &self.pivots[p] {
                        let pc = *pc as usize;
                        let t = self.ops.mul(&factor, pv);
                        self.scratch[pc] = self.ops.sub(&self.scratch[pc], &t);
                    }
                    c += 1;
                }
                None => {
                    let inv = self.ops.inv(&self.scratch[c]);
                    let mut newrow = Vec::new();
                    for k in c..self.ncols {
                        if !self.ops.is_zero(&self.scratch[k]) {
                            newrow.push((k as u32, self.ops.mul(&self.scratch[k], &inv)));
                            self.scratch[k] = self.ops.zero();
                        }
                    }
                    result = Some((c, newrow));
                    break;
                }
            }
        }
        match result {
            Some((c, newrow)) => {
                self.pivot_of_col[c] = Some(self.pivots.len());
                self.pivots.push(newrow);
                true
            }
            None => false,
        }
    }
}

pub fn sparse_rank<F: FieldOps>(ops: F, ncols: usize, rows: &[SparseRow<F::Elem>]) -> usize {
    let mut ech = SparseEchelon::new(ops, ncols);
    for r in rows {
        ech.insert(r);
    }
    ech.rank()
}

/// Left-inverse data for an `m × n` matrix of full column rank: solves
/// `A·x = b` and reports inconsistency.
#[derive(Clone, Debug)]
pub struct DenseSolver {
    field: Field,
    n: usize,
    m: usize,
    /// Row operations: the first `n` rows give `x`, the rest must annihilate `b`.
    ops: Vec<Vec<Scalar>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveError {
    Singular,
    Inconsistent,
}

impl DenseSolver {
    /// `columns[j]` is column `j` of `A`, each of length `m`.
    pub fn new(field: Field, m: usize, columns: &[Vec<Scalar>]) -> Result<DenseSolver, SolveError> {
        let n = columns.len();
        if n > m {
            return Err(SolveError::Singular);
        }
        let zero = field.zero();
        let one = field.one();
        let mut rows: Vec<Vec<Scalar>> = (0..m)
            .map(|i| {
                let mut r: Vec<Scalar> = columns.iter().map(|c| c[i].clone()).collect();
                r.extend((0..m).map(|k| if k == i { one.clone() } else { zero.clone() }));
                r
            })
            .collect();
        for c in 0..n {
            let piv = (c..m).find(|&r| !rows[r][c].is_zero()).ok_or(SolveError::Singular)?;
            rows.swap(piv, c);
            let inv = rows[c][c].inv().expect("nonzero pivot");
            for v in rows[c].iter_mut() {
                if !v.is_zero() {
                    *v = &*v * &inv;
                }
            }
            let pivot_row = rows[c].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r == c || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for (k, pv) in pivot_row.iter().enumerate() {
                    if !pv.is_zero() {
                        row[k] = &row[k] - &(&f * pv);
                    }
                }
            }
        }
        let ops = rows.into_iter().map(|r| r[n..].to_vec()).collect();
        Ok(DenseSolver { field, n, m, ops })
    }

    pub fn unknowns(&self) -> usize {
        self.n
    }

    pub fn equations(&self) -> usize {
        self.m
    }

    fn dot(&self, row: &[Scalar], b: &[(usize, Scalar)]) -> Scalar {
        let mut acc = self.field.zero();
        for (i, v) in b {
            let r = &row[*i];
            if !r.is_zero() {
                acc = &acc + &(r * v);
            }
        }
        acc
    }

    /// Solves for a sparse right-hand side `(row index, value)`.
    pub fn solve(&self, b: &[(usize, Scalar)]) -> Result<Vec<Scalar>, SolveError> {
        for k in self.n..self.m {
            if !self.dot(&self.ops[k], b).is_zero() {
                return Err(SolveError::Inconsistent);
            }
        }
        Ok((0..self.n).map(|k| self.dot(&self.ops[k], b)).collect())
    }

    /// Only the unknowns listed in `which`, without the consistency check.
    pub fn solve_partial(&self, b: &[(usize, Scalar)], which: &[usize]) -> Vec<Scalar> {
        which.iter().map(|&k| self.dot(&self.ops[k], b)).collect()
    }
}

/// Rank of a dense matrix given by rows.
pub fn dense_rank(field: Field, rows: &[Vec<Scalar>]) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let sparse: Vec<SparseRow<Scalar>> = rows
        .iter()
        .map(|r| r.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (i as u32, v.clone())).collect())
        .collect();
    sparse_rank(ExactOps(field), ncols, &sparse)
}
