use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::{GradedModel, MixedClass};
use crate::exactalg::{Field, Monomial};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TableStatus {
    Computed,
    /// Identically zero; the note says why.
    Zero(String),
    /// No formula is available; never silently treated as zero.
    Unsupported(String),
}

/// A dual operation tabulated on the graded basis of its domain up to a cap.
#[derive(Clone, Debug)]
pub struct OperationTable {
    pub domain: Arc<GradedModel>,
    pub codomain: Arc<GradedModel>,
    pub cap: u32,
    /// `(monomial, odd mask)` basis element and its image.
    pub entries: Vec<(Monomial, u32, MixedClass)>,
    pub up_to_scalar: bool,
    pub status: TableStatus,
    pub notes: Vec<String>,
}

impl OperationTable {
    pub fn computed(
        domain: Arc<GradedModel>,
        codomain: Arc<GradedModel>,
        cap: u32,
        entries: Vec<(Monomial, u32, MixedClass)>,
        up_to_scalar: bool,
    ) -> OperationTable {
        OperationTable {
            domain,
            codomain,
            cap,
            entries,
            up_to_scalar,
            status: TableStatus::Computed,
            notes: Vec::new(),
        }
    }

    pub fn unsupported(
        domain: Arc<GradedModel>,
        codomain: Arc<GradedModel>,
        cap: u32,
        reason: impl Into<String>,
    ) -> OperationTable {
        OperationTable {
            domain,
            codomain,
            cap,
            entries: Vec::new(),
            up_to_scalar: false,
            status: TableStatus::Unsupported(reason.into()),
            notes: Vec::new(),
        }
    }

    pub fn identity(model: Arc<GradedModel>, cap: u32) -> OperationTable {
        let entries = model
            .basis_up_to(cap)
            .into_iter()
            .map(|(m, mask)| {
                let v = model.basis_class(&m, mask);
                (m, mask, v)
            })
            .collect();
        OperationTable::computed(model.clone(), model, cap, entries, false)
    }

    /// The zero map, tabulated; `note` records why it vanishes.
    pub fn zero(
        domain: Arc<GradedModel>,
        codomain: Arc<GradedModel>,
        cap: u32,
        note: impl Into<String>,
    ) -> OperationTable {
        let zero = codomain.zero();
        let entries = domain.basis_up_to(cap).into_iter().map(|(m, mask)| (m, mask, zero.clone())).collect();
        let mut t = OperationTable::computed(domain, codomain, cap, entries, false);
        t.status = TableStatus::Zero(note.into());
        t
    }

    /// `T₁⊗…⊗T_k` with the Koszul sign `(−1)^{|T_b||a|}` for each factor
    /// `a` standing left of `T_b`.
    pub fn tensor(field: Field, tables: &[OperationTable], cap: u32) -> Result<OperationTable> {
        if tables.len() == 1 {
            return Ok(tables[0].clone());
        }
        let domain =
            Arc::new(GradedModel::tensor(field, &tables.iter().map(|t| t.domain.clone()).collect::<Vec<_>>())?);
        let codomain =
            Arc::new(GradedModel::tensor(field, &tables.iter().map(|t| t.codomain.clone()).collect::<Vec<_>>())?);
        let up_to_scalar = tables.iter().any(|t| t.up_to_scalar);
        if let Some(t) = tables.iter().find(|t| t.is_unsupported()) {
            let TableStatus::Unsupported(r) = &t.status else { unreachable!() };
            return Ok(OperationTable::unsupported(domain, codomain, cap, r.clone()));
        }
        let odd_shift: Vec<bool> =
            tables.iter().map(|t| t.degree_shift().ok().flatten().unwrap_or(0) % 2 != 0).collect();
        let mut entries = Vec::new();
        for (m, mask) in domain.basis_up_to(cap) {
            let parts = domain.split_basis(&m, mask);
            let mut value = codomain.one();
            let mut left_odd = false;
            let mut negative = false;
            for (k, ((pm, pmask), t)) in parts.iter().zip(tables).enumerate() {
                if odd_shift[k] && left_odd {
                    negative = !negative;
                }
                let d = pm.degree() + t.domain.mask_degree(*pmask);
                left_odd ^= d % 2 == 1;
                let v = t.lookup(pm, *pmask).ok_or(Error::DegreeCap { degree: d, cap: t.cap })?;
                value = codomain.mul(&value, &codomain.embed_factor(k, v));
                if value.is_zero() {
                    break;
                }
            }
            if negative {
                value = codomain.scale(&value, &-field.one());
            }
            entries.push((m, mask, value));
        }
        let mut t = OperationTable::computed(domain, codomain, cap, entries, up_to_scalar);
        t.notes = tables.iter().flat_map(|t| t.notes.iter().cloned()).collect();
        Ok(t)
    }

    pub fn is_unsupported(&self) -> bool {
        matches!(self.status, TableStatus::Unsupported(_))
    }

    /// Every entry is zero (and the table is not unsupported).
    pub fn is_zero(&self) -> bool {
        !self.is_unsupported() && self.entries.iter().all(|(_, _, v)| v.is_zero())
    }

    pub fn lookup(&self, m: &Monomial, mask: u32) -> Option<&MixedClass> {
        self.entries.iter().find(|(bm, bk, _)| bm == m && *bk == mask).map(|(_, _, v)| v)
    }

    pub fn nonzero_entries(&self) -> impl Iterator<Item = &(Monomial, u32, MixedClass)> {
        self.entries.iter().filter(|(_, _, v)| !v.is_zero())
    }

    /// Linear extension to a class of the domain.
    pub fn apply(&self, c: &MixedClass) -> Result<MixedClass> {
        if let TableStatus::Unsupported(r) = &self.status {
            return Err(Error::Unsupported(r.clone()));
        }
        let mut acc = self.codomain.zero();
        for (m, mask, coef) in c.basis_terms() {
            let d = m.degree() + self.domain.mask_degree(mask);
            let img = self.lookup(m, mask).ok_or(Error::DegreeCap { degree: d, cap: self.cap })?;
            acc = self.codomain.add(&acc, &self.codomain.scale(img, coef));
        }
        Ok(acc)
    }

    /// `other ∘ self`: first this table, then `other`.
    pub fn then(&self, other: &OperationTable) -> Result<OperationTable> {
        let up_to_scalar = self.up_to_scalar || other.up_to_scalar;
        let cap = self.cap.min(other.cap);
        if self.is_unsupported() || other.is_unsupported() {
            let reason = match (&self.status, &other.status) {
                (TableStatus::Unsupported(r), _) | (_, TableStatus::Unsupported(r)) => r.clone(),
                _ => unreachable!(),
            };
            return Ok(OperationTable::unsupported(self.domain.clone(), other.codomain.clone(), cap, reason));
        }
        let mut entries = Vec::with_capacity(self.entries.len());
        for (m, mask, v) in &self.entries {
            let d = m.degree() + self.domain.mask_degree(*mask);
            if d > cap {
                continue;
            }
            entries.push((m.clone(), *mask, other.apply(v)?));
        }
        let mut t = OperationTable::computed(self.domain.clone(), other.codomain.clone(), cap, entries, up_to_scalar);
        t.notes = self.notes.iter().chain(&other.notes).cloned().collect();
        Ok(t)
    }

    /// The degree shift shared by all nonzero entries; `Err` lists a
    /// conflicting pair of shifts.
    pub fn degree_shift(&self) -> core::result::Result<Option<i64>, (i64, i64)> {
        let mut shift = None;
        for (m, mask, v) in self.nonzero_entries() {
            let d_in = (m.degree() + self.domain.mask_degree(*mask)) as i64;
            for d_out in v.degrees(&self.codomain) {
                let s = d_out as i64 - d_in;
                match shift {
                    None => shift = Some(s),
                    Some(t) if t != s => return Err((t, s)),
                    _ => {}
                }
            }
        }
        Ok(shift)
    }

    /// Same entries (exactly, or up to one common nonzero scalar when
    /// `projective`).
    pub fn same_as(&self, other: &OperationTable, projective: bool) -> bool {
        if self.is_unsupported() || other.is_unsupported() {
            return self.status == other.status;
        }
        let mut ratio = None;
        for (m, mask, v) in &self.entries {
            let w = match other.lookup(m, *mask) {
                Some(w) => w,
                None => return false,
            };
            if !projective {
                if v != w {
                    return false;
                }
                continue;
            }
            match (v.is_zero(), w.is_zero()) {
                (true, true) => {}
                (false, false) => match (v.ratio_to(w), &ratio) {
                    (Some(r), None) => ratio = Some(r),
                    (Some(r), Some(s)) if r == *s => {}
                    _ => return false,
                },
                _ => return false,
            }
        }
        self.entries.len() == other.entries.len()
    }

    /// Identity on every tabulated basis element.
    pub fn is_identity(&self) -> bool {
        !self.is_unsupported() && self.entries.iter().all(|(m, mask, v)| *v == self.domain.basis_class(m, *mask))
    }

    pub fn describe_entry(&self, m: &Monomial, mask: u32) -> String {
        self.domain.format(&self.domain.basis_class(m, mask))
    }
}
