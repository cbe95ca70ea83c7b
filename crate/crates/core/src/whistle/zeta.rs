use alloc::format;
use alloc::vec::Vec;

use crate::exactalg::{telescoping_split, PolyMatrix, RingRef};
use crate::liecat::PairDatum;
use crate::{Error, Result};

/// `ζ` with `Σ_j ζ_ij·(u_j − v_j) = ρ(x_i)(u) − ρ(x_i)(v)`, built by
/// telescoping in a chosen order. Entries live in `H*(BH)⊗H*(BH)` with
/// the second factor standing for `v`.
#[derive(Clone, Debug)]
pub struct ZetaMatrix {
    pub entries: PolyMatrix,
    pub order: Vec<usize>,
    /// Both certificate identities were checked exactly.
    pub verified: bool,
}

/// Every permutation of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            return out;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
}

/// `ζ` in `ring = H*(BH)⊗H*(BH)`, where factor `k` has variable indices
/// `maps[k]`.
pub fn zeta_matrix_in(pair: &PairDatum, ring: &RingRef, maps: &[Vec<usize>], order: &[usize]) -> Result<ZetaMatrix> {
    pair.check_shape()?;
    let l = pair.rank();
    let pairs: Vec<(usize, usize)> = (0..l).map(|j| (maps[0][j], maps[1][j])).collect();
    let mut rows = Vec::with_capacity(l);
    for f in pair.restriction() {
        rows.push(telescoping_split(&f.embed(ring, &maps[0]), &pairs, order)?);
    }
    let entries = PolyMatrix::from_rows(ring, rows)?;
    // m(ζ_ij) = ∂ρ(x_i)/∂u_j, with m identifying both factors with H*(BH)
    let mut diag = alloc::vec![0usize; ring.nvars()];
    for j in 0..l {
        diag[maps[0][j]] = j;
        diag[maps[1][j]] = j;
    }
    for (i, f) in pair.restriction().iter().enumerate() {
        for j in 0..l {
            let m = entries.get(i, j).embed(pair.u_ring(), &diag);
            if m != f.partial_derivative(j) {
                return Err(Error::Certificate(format!("m(ζ_{i}{j}) = {m} differs from ∂ρ(x_{i})/∂u_{j}")));
            }
        }
    }
    Ok(ZetaMatrix { entries, order: order.to_vec(), verified: true })
}
