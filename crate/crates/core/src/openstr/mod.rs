//! The open sector: the interval models `H*(BK)⊗H*(BL)/(k*x − ℓ*x)`, the
//! three-label model of the Υ cobordism, the vanishing of `Dμ_Υ` with its
//! image-containment witness, the representative `Λ_Υ` and `Dμ_{Υ^op}`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::exactalg::{Monomial, Polynomial, Ring, Scalar};
use crate::grobner::linalg::{certified_rank, SparseRow};
use crate::grobner::{FreeModuleDecomposer, IdealPresentation, QuotientRing};
use crate::liecat::PairDatum;
use crate::whistle::{
    interval_model, jacobian_class, top_monomial, FundamentalClass, GradedModel, MixedClass, ModelKind, OperationTable,
};
use crate::{Error, Result};

/// Per-degree certificate that `φ(Open(K,L))` lies in the image of `1⊗m⊗1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeWitness {
    pub degree: u32,
    /// `dim Υ_d`.
    pub upsilon_dim: usize,
    /// Rank of `1⊗m⊗1` restricted to degree `d`.
    pub image_rank: usize,
    /// Basis elements `c` of `Open(K,L)_d` whose explicit preimage was checked.
    pub preimages_checked: usize,
}

impl DegreeWitness {
    pub fn holds(&self) -> bool {
        self.image_rank == self.upsilon_dim
    }
}

/// Models and structure maps for labels `K, H, L` of one group.
#[derive(Clone, Debug)]
pub struct OpenModels {
    k: PairDatum,
    h: PairDatum,
    l: PairDatum,
    cap: u32,
    open_kl: Arc<GradedModel>,
    open_kh: Arc<GradedModel>,
    open_hl: Arc<GradedModel>,
    upsilon: Arc<GradedModel>,
    double: Arc<GradedModel>,
    /// Variable offsets of the K, H and L blocks in the Υ ring.
    ups_offsets: [usize; 3],
    fundamental: core::result::Result<FundamentalClass, Error>,
    decomposer: FreeModuleDecomposer,
    top_index: usize,
}

pub fn build_open_models(k: &PairDatum, h: &PairDatum, l: &PairDatum, cap: u32) -> Result<OpenModels> {
    for p in [k, h, l] {
        p.check_shape()?;
        if p.group() != k.group() {
            return Err(Error::Signature(format!(
                "label {} is a subgroup of {}, not of {}",
                p.subgroup().name(),
                p.group().name(),
                k.group().name()
            )));
        }
    }
    let field = k.field();
    let (open_kl, _) = interval_model(k, l)?;
    let (open_kh, _) = interval_model(k, h)?;
    let (open_hl, _) = interval_model(h, l)?;
    let (ring, maps) = Ring::tensor(field, &[k.u_ring(), h.u_ring(), l.u_ring()])?;
    let mut rels = Vec::new();
    for i in 0..k.rank() {
        let a = k.restriction()[i].embed(&ring, &maps[0]);
        let b = h.restriction()[i].embed(&ring, &maps[1]);
        let c = l.restriction()[i].embed(&ring, &maps[2]);
        rels.push(&a - &b);
        rels.push(&b - &c);
    }
    rels.retain(|p| !p.is_zero());
    let ups_even = QuotientRing::new(IdealPresentation::new(&ring, rels)?)?;
    let upsilon = GradedModel::new(
        ModelKind::Upsilon {
            left: k.subgroup().name().into(),
            middle: h.subgroup().name().into(),
            right: l.subgroup().name().into(),
        },
        ups_even,
        Vec::new(),
    )?;
    let open_kh = Arc::new(open_kh);
    let open_hl = Arc::new(open_hl);
    let double = GradedModel::tensor(field, &[open_kh.clone(), open_hl.clone()])?;
    let ups_offsets = [0, k.rank(), k.rank() + h.rank()];

    let hq = h.restriction_quotient()?;
    let basis = hq.full_basis().ok_or_else(|| Error::Hypothesis(format!("{}: H*(BH)/(ρ(x)) is infinite", h.name())))?;
    let top = top_monomial(&hq)?;
    let top_index = basis.iter().position(|m| *m == top).expect("top monomial is standard");
    let middle: Vec<Polynomial> =
        basis.iter().map(|m| Polynomial::monomial(h.u_ring(), m.clone(), field.one()).embed(&ring, &maps[1])).collect();
    // coefficient variables: K block then L block of Open(K,L)
    let images: Vec<Polynomial> = maps[0].iter().chain(&maps[2]).map(|&i| Polynomial::var(&ring, i)).collect();
    let decomposer = FreeModuleDecomposer::new(open_kl.even().clone(), upsilon.even().clone(), images, middle, cap)?;
    Ok(OpenModels {
        k: k.clone(),
        h: h.clone(),
        l: l.clone(),
        cap,
        open_kl: Arc::new(open_kl),
        open_kh,
        open_hl,
        upsilon: Arc::new(upsilon),
        double: Arc::new(double),
        ups_offsets,
        fundamental: jacobian_class(h),
        decomposer,
        top_index,
    })
}

impl OpenModels {
    pub fn labels(&self) -> [&PairDatum; 3] {
        [&self.k, &self.h, &self.l]
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    /// `Open(K,L)`, the model of the outgoing interval of Υ.
    pub fn open_interval(&self) -> &Arc<GradedModel> {
        &self.open_kl
    }

    pub fn open_left(&self) -> &Arc<GradedModel> {
        &self.open_kh
    }

    pub fn open_right(&self) -> &Arc<GradedModel> {
        &self.open_hl
    }

    pub fn upsilon(&self) -> &Arc<GradedModel> {
        &self.upsilon
    }

    /// `Open(K,H)⊗Open(H,L)`.
    pub fn double(&self) -> &Arc<GradedModel> {
        &self.double
    }

    fn nk(&self) -> usize {
        self.k.rank()
    }

    /// `φ`: `Open(K,L) → Υ`, inserting 1 in the middle factor.
    pub fn phi(&self, c: &MixedClass) -> MixedClass {
        let n = self.nk();
        let map: Vec<usize> =
            (0..n).map(|i| self.ups_offsets[0] + i).chain((0..n).map(|i| self.ups_offsets[2] + i)).collect();
        self.upsilon.class(c.terms().map(|(mask, p)| (mask, p.embed(self.upsilon.ring(), &map))))
    }

    /// `1⊗m⊗1`: `Open(K,H)⊗Open(H,L) → Υ`, multiplying the two middle factors.
    pub fn merge(&self, c: &MixedClass) -> MixedClass {
        let n = self.nk();
        let [ok, oh, ol] = self.ups_offsets;
        let map: Vec<usize> = (0..n)
            .map(|i| ok + i)
            .chain((0..n).map(|i| oh + i))
            .chain((0..n).map(|i| oh + i))
            .chain((0..n).map(|i| ol + i))
            .collect();
        self.upsilon.class(c.terms().map(|(mask, p)| (mask, p.embed(self.upsilon.ring(), &map))))
    }

    /// The explicit preimage `a⊗1⊗1⊗b` of `φ(a⊗b)` under `1⊗m⊗1`, taken on
    /// the normal-form representative of `c`.
    pub fn preimage(&self, c: &MixedClass) -> MixedClass {
        let n = self.nk();
        let map: Vec<usize> = (0..n).chain((0..n).map(|i| 3 * n + i)).collect();
        self.double.class(c.terms().map(|(mask, p)| (mask, p.embed(self.double.ring(), &map))))
    }

    /// `Dμ_Υ`, which vanishes; the containment that forces it is checked for `c`.
    pub fn dmu_upsilon(&self, c: &MixedClass) -> Result<MixedClass> {
        if self.merge(&self.preimage(c)) != self.phi(c) {
            return Err(Error::Certificate(format!("φ({}) is not the image of its preimage", self.open_kl.format(c))));
        }
        Ok(self.double.zero())
    }

    /// The containment `im φ ⊆ im(1⊗m⊗1)` in every degree through `cap`.
    pub fn upsilon_witness(&self, cap: u32) -> Result<Vec<DegreeWitness>> {
        let field = self.k.field();
        let mut out = Vec::new();
        for d in 0..=cap {
            let targets = self.upsilon.even().standard_monomials(d);
            let index: BTreeMap<Monomial, usize> = targets.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
            let mut rows: Vec<SparseRow<Scalar>> = Vec::new();
            for m in self.double.even().standard_monomials(d) {
                let img = self.merge(&self.double.basis_class(&m, 0));
                if let Some(p) = img.even_part() {
                    rows.push(p.terms().map(|(t, c)| (index[t] as u32, c.clone())).collect());
                }
            }
            rows.iter_mut().for_each(|r| r.sort_by_key(|(c, _)| *c));
            let image_rank = certified_rank(field, targets.len(), &rows, targets.len());
            let mut checked = 0;
            for m in self.open_kl.even().standard_monomials(d) {
                self.dmu_upsilon(&self.open_kl.basis_class(&m, 0))?;
                checked += 1;
            }
            let w = DegreeWitness { degree: d, upsilon_dim: targets.len(), image_rank, preimages_checked: checked };
            if !w.holds() {
                return Err(Error::Certificate(format!(
                    "1⊗m⊗1 has rank {} < {} in degree {d}",
                    w.image_rank, w.upsilon_dim
                )));
            }
            out.push(w);
        }
        Ok(out)
    }

    pub fn fundamental_class(&self) -> Result<&FundamentalClass> {
        self.fundamental.as_ref().map_err(Clone::clone)
    }

    /// `Λ_Υ = 1⊗J⊗1` with `J` the Jacobian of the middle label.
    pub fn lambda_upsilon(&self) -> Result<MixedClass> {
        let fc = self.fundamental_class()?;
        let map: Vec<usize> = (0..self.h.rank()).map(|i| self.ups_offsets[1] + i).collect();
        let lam = self.upsilon.even_class(fc.jacobian.embed(self.upsilon.ring(), &map));
        let proj = self.project_to_fibre(&lam);
        if proj != fc.normal_form {
            return Err(Error::Certificate(format!("j*(Λ_Υ) = {proj}, expected {}", fc.normal_form)));
        }
        Ok(lam)
    }

    /// `j*`: kill the K and L variables and reduce in `H*(BH)/(ρ(x))`.
    pub fn project_to_fibre(&self, c: &MixedClass) -> Polynomial {
        let ring = self.upsilon.ring();
        let hr = self.h.u_ring();
        let mut out = Polynomial::zero(hr);
        if let Some(p) = c.even_part() {
            let [_, oh, ol] = self.ups_offsets;
            let outer: Vec<usize> = (0..ring.nvars()).filter(|&i| i < oh || i >= ol).collect();
            let killed = p.kill_variables(&outer);
            let map: Vec<usize> = (0..ring.nvars()).map(|i| i.saturating_sub(oh).min(hr.nvars() - 1)).collect();
            out = killed.embed(hr, &map);
        }
        self.h.restriction_quotient().expect("validated").reduce(&out)
    }

    /// `Dμ_{Υ^op}`: merge the middle factors, decompose over
    /// `Open(K,L)·(1⊗b⊗1)`, return the `b_top` coefficient divided by `λ`.
    pub fn dmu_upsilon_op(&self, c: &MixedClass) -> Result<MixedClass> {
        let fc = self.fundamental_class()?;
        let merged = self.merge(c);
        let Some(p) = merged.even_part() else {
            return Ok(self.open_kl.zero());
        };
        let top = self.decomposer.coefficient(p, self.top_index)?;
        let inv = fc.lambda.inv().expect("λ ≠ 0");
        Ok(self.open_kl.even_class(top.scale(&inv)))
    }

    /// `1⊗Λ'⊗1⊗1` in the double model, `Λ'` the middle Jacobian in the first interval.
    pub fn padded_lambda(&self) -> Result<MixedClass> {
        let fc = self.fundamental_class()?;
        let n = self.nk();
        let map: Vec<usize> = (0..self.h.rank()).map(|i| n + i).collect();
        Ok(self.double.even_class(fc.jacobian.embed(self.double.ring(), &map)))
    }

    /// The zero table of `Dμ_Υ`, after the containment witness succeeds
    /// through `cap`.
    pub fn dmu_upsilon_table(&self, cap: u32) -> Result<OperationTable> {
        self.upsilon_witness(cap)?;
        let mut t =
            OperationTable::zero(self.open_kl.clone(), self.double.clone(), cap, "φ lands in the image of 1⊗m⊗1");
        t.notes.push(format!("upsilon witness holds in degrees 0..={cap}"));
        Ok(t)
    }

    pub fn dmu_upsilon_op_table(&self, cap: u32) -> Result<OperationTable> {
        let mut entries = Vec::new();
        for (m, mask) in self.double.basis_up_to(cap) {
            let v = self.dmu_upsilon_op(&self.double.basis_class(&m, mask))?;
            entries.push((m, mask, v));
        }
        Ok(OperationTable::computed(self.double.clone(), self.open_kl.clone(), cap, entries, true))
    }

    pub fn dmu_upsilon_op_shift(&self) -> i64 {
        -(self.h.dim_homogeneous_space() as i64)
    }
}
