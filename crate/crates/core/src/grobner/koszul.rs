use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::linalg::{to_mod, ExactOps, ModOps, SparseEchelon, SparseRow};
use super::quotient::QuotientRing;
use crate::exactalg::{Field, Monomial, Polynomial, Scalar};
use crate::{Error, Result};

type RankFn<'a> = dyn Fn(usize, &[SparseRow<Scalar>]) -> Option<usize> + 'a;

/// Prime used to certify vanishing over ℚ before falling back to exact ranks.
pub const CERTIFICATE_PRIME: u64 = 2_147_483_647;

/// Koszul homology dimensions `H_i` in internal degrees `0..=up_to`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulHomology {
    /// `dims[i][d]`.
    pub dims: Vec<Vec<usize>>,
    /// Dimensions of the chain groups, same indexing.
    pub chain_dims: Vec<Vec<usize>>,
    pub up_to: u32,
}

impl KoszulHomology {
    pub fn length(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dim(&self, i: usize, degree: u32) -> usize {
        self.dims[i][degree as usize]
    }

    /// `H_i = 0` for every `i > 0` in the computed range.
    pub fn vanishes_above_zero(&self) -> bool {
        self.dims.iter().skip(1).all(|row| row.iter().all(|&d| d == 0))
    }

    /// First `(i, degree)` with `i > 0` and nonzero homology.
    pub fn first_nonzero(&self) -> Option<(usize, u32)> {
        for (i, row) in self.dims.iter().enumerate().skip(1) {
            if let Some(d) = row.iter().position(|&x| x != 0) {
                return Some((i, d as u32));
            }
        }
        None
    }
}

/// Koszul complex of `seq` over the graded ring `ring`, truncated at internal
/// degree `up_to`; each rank is computed by sparse elimination per degree.
pub fn koszul_homology_dims(seq: &[Polynomial], ring: &QuotientRing, up_to: u32) -> Result<KoszulHomology> {
    let n = seq.len();
    if n > 24 {
        return Err(Error::Invalid(format!("Koszul complex on {n} elements is too large")));
    }
    let mut degs = Vec::with_capacity(n);
    for (k, f) in seq.iter().enumerate() {
        if !crate::exactalg::poly::same_ring(f.ring(), ring.ring()) {
            return Err(Error::RingMismatch);
        }
        match f.homogeneous_degree() {
            Some(d) if !f.is_zero() => degs.push(d),
            _ => return Err(Error::NonHomogeneous(format!("Koszul element {k}: {f}"))),
        }
    }
    let field = ring.ring().field();
    let standard: Vec<Vec<Monomial>> = (0..=up_to).map(|d| ring.standard_monomials(d)).collect();
    let index: Vec<BTreeMap<Monomial, usize>> =
        standard.iter().map(|ms| ms.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect()).collect();
    let masks_by_size: Vec<Vec<u32>> =
        (0..=n).map(|i| (0u32..(1 << n)).filter(|m| m.count_ones() as usize == i).collect()).collect();
    let mask_degree = |mask: u32| -> u32 { (0..n).filter(|k| mask & (1 << k) != 0).map(|k| degs[k]).sum() };

    let mut dims = vec![vec![0usize; up_to as usize + 1]; n + 1];
    let mut chain_dims = dims.clone();
    for d in 0..=up_to {
        // column layout of K_{i,d}: one block of standard monomials per subset
        let mut offsets: Vec<BTreeMap<u32, usize>> = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let mut off = BTreeMap::new();
            let mut total = 0;
            for &mask in &masks_by_size[i] {
                let md = mask_degree(mask);
                if md <= d {
                    off.insert(mask, total);
                    total += standard[(d - md) as usize].len();
                }
            }
            chain_dims[i][d as usize] = total;
            offsets.push(off);
        }
        let mut products: BTreeMap<(usize, Monomial), Polynomial> = BTreeMap::new();
        let mut rows: Vec<Vec<SparseRow<Scalar>>> = vec![Vec::new(); n + 1];
        for i in 1..=n {
            for &mask in offsets[i].keys() {
                let md = mask_degree(mask);
                for m in &standard[(d - md) as usize] {
                    let mut row: BTreeMap<u32, Scalar> = BTreeMap::new();
                    let mut below = 0;
                    for (k, g) in seq.iter().enumerate() {
                        if mask & (1 << k) == 0 {
                            continue;
                        }
                        let face = mask & !(1 << k);
                        let sign_negative = below % 2 == 1;
                        below += 1;
                        let target_degree = d - mask_degree(face);
                        let base = offsets[i - 1][&face];
                        let prod =
                            products.entry((k, m.clone())).or_insert_with(|| ring.reduce(&g.mul_term(m, &field.one())));
                        for (tm, c) in prod.terms() {
                            let col = base + index[target_degree as usize][tm];
                            let c = if sign_negative { -c } else { c.clone() };
                            let e = row.entry(col as u32).or_insert_with(|| field.zero());
                            *e = &*e + &c;
                        }
                    }
                    let row: SparseRow<Scalar> = row.into_iter().filter(|(_, v)| !v.is_zero()).collect();
                    rows[i].push(row);
                }
            }
        }
        let homology = |ranks: &[usize]| -> Vec<usize> {
            (0..=n)
                .map(|i| {
                    let r_out = if i >= 1 { ranks[i] } else { 0 };
                    let r_in = if i < n { ranks[i + 1] } else { 0 };
                    chain_dims[i][d as usize] - r_out - r_in
                })
                .collect()
        };
        let rank_with = |ops_rank: &RankFn| -> Option<Vec<usize>> {
            let mut ranks = vec![0usize; n + 1];
            for i in 1..=n {
                ranks[i] = ops_rank(chain_dims[i - 1][d as usize], &rows[i])?;
            }
            Some(ranks)
        };
        let modular = |p: u64| {
            move |ncols: usize, rs: &[SparseRow<Scalar>]| -> Option<usize> {
                let mut ech = SparseEchelon::new(ModOps(p), ncols);
                for r in rs {
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
            }
        };
        let exact = |ncols: usize, rs: &[SparseRow<Scalar>]| -> Option<usize> {
            let mut ech = SparseEchelon::new(ExactOps(field), ncols);
            for r in rs {
                ech.insert(r);
            }
            Some(ech.rank())
        };
        let h = match field {
            Field::Prime(p) => homology(&rank_with(&modular(p)).expect("residues reduce")),
            Field::Rational => {
                let certified = rank_with(&modular(CERTIFICATE_PRIME)).map(|r| homology(&r));
                match certified {
                    // rank mod p never exceeds the rational rank, so vanishing is inherited
                    Some(h) if h.iter().skip(1).all(|&x| x == 0) => {
                        let mut h = h;
                        h[0] = euler_characteristic(&chain_dims, d as usize);
                        h
                    }
                    _ => homology(&rank_with(&exact).expect("exact ranks")),
                }
            }
        };
        for i in 0..=n {
            dims[i][d as usize] = h[i];
        }
    }
    Ok(KoszulHomology { dims, chain_dims, up_to })
}

fn euler_characteristic(chain_dims: &[Vec<usize>], d: usize) -> usize {
    let mut chi: i64 = 0;
    for (i, row) in chain_dims.iter().enumerate() {
        let v = row[d] as i64;
        chi += if i % 2 == 0 { v } else { -v };
    }
    chi.max(0) as usize
}

/// Chain-level cross check used in tests: exact ranks with no modular shortcut.
#[cfg(test)]
pub(crate) fn exact_rank(field: Field, ncols: usize, rows: &[SparseRow<Scalar>]) -> usize {
    super::linalg::sparse_rank(ExactOps(field), ncols, rows)
}
