use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::GroupPresentation;
use crate::exactalg::{parse_polynomial, Field, Polynomial, Ring, RingRef};
use crate::grobner::{IdealPresentation, PoincareSeries, QuotientRing};
use crate::{Error, Result};

/// A subgroup `H ⊂ G` given by the restriction `ρ = (Bι)*: H*(BG) → H*(BH)`.
///
/// Construction only parses; the hypotheses are checked by
/// [`validate_pair`](super::validate_pair).
#[derive(Clone, Debug)]
pub struct PairDatum {
    name: String,
    field: Field,
    group: GroupPresentation,
    subgroup: GroupPresentation,
    x_ring: RingRef,
    u_ring: RingRef,
    restriction_text: Vec<(String, String)>,
    restriction: Vec<Polynomial>,
    torsion_free_asserted: bool,
}

impl PairDatum {
    /// `restriction` maps each generator of `group` to a polynomial in the
    /// generators of `subgroup`.
    pub fn new(
        name: impl Into<String>,
        field: Field,
        group: GroupPresentation,
        subgroup: GroupPresentation,
        restriction: Vec<(String, String)>,
        torsion_free_asserted: bool,
    ) -> Result<PairDatum> {
        let name = name.into();
        let x_ring = group.ring(field);
        let u_ring = subgroup.ring(field);
        let mut by_name: BTreeMap<&str, &str> = BTreeMap::new();
        for (x, img) in &restriction {
            if x_ring.var_index(x).is_none() {
                return Err(Error::UnknownVariable(format!("{x} (not a generator of {})", group.name())));
            }
            if by_name.insert(x, img).is_some() {
                return Err(Error::Invalid(format!("restriction of `{x}` given twice")));
            }
        }
        let mut images = Vec::with_capacity(group.rank());
        let mut ordered = Vec::with_capacity(group.rank());
        for (x, _) in group.generators() {
            let text = by_name.get(x.as_str()).ok_or_else(|| Error::UnmappedVariable(x.clone()))?;
            images.push(parse_polynomial(text, &u_ring)?);
            ordered.push((x.clone(), String::from(*text)));
        }
        Ok(PairDatum {
            name,
            field,
            group,
            subgroup,
            x_ring,
            u_ring,
            restriction_text: ordered,
            restriction: images,
            torsion_free_asserted,
        })
    }

    /// The same data over another field.
    pub fn with_field(&self, field: Field) -> Result<PairDatum> {
        PairDatum::new(
            self.name.clone(),
            field,
            self.group.clone(),
            self.subgroup.clone(),
            self.restriction_text.clone(),
            self.torsion_free_asserted,
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn group(&self) -> &GroupPresentation {
        &self.group
    }

    pub fn subgroup(&self) -> &GroupPresentation {
        &self.subgroup
    }

    /// `H*(BG)`.
    pub fn x_ring(&self) -> &RingRef {
        &self.x_ring
    }

    /// `H*(BH)`.
    pub fn u_ring(&self) -> &RingRef {
        &self.u_ring
    }

    /// `ρ(x_i)`, indexed like the group generators.
    pub fn restriction(&self) -> &[Polynomial] {
        &self.restriction
    }

    pub fn restriction_text(&self) -> &[(String, String)] {
        &self.restriction_text
    }

    pub fn torsion_free_asserted(&self) -> bool {
        self.torsion_free_asserted
    }

    pub fn rank(&self) -> usize {
        self.group.rank()
    }

    pub fn x_degrees(&self) -> Vec<u32> {
        self.group.degrees().collect()
    }

    pub fn u_degrees(&self) -> Vec<u32> {
        self.subgroup.degrees().collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.group.rank() == self.subgroup.rank() && self.dim_homogeneous_space() == 0
    }

    /// `dim H = Σ (deg u_j − 1)`.
    pub fn dim_subgroup(&self) -> u32 {
        self.subgroup.dimension()
    }

    /// `dim G/H = Σ deg x_i − Σ deg u_j` (0 if negative).
    pub fn dim_homogeneous_space(&self) -> u32 {
        let a: u32 = self.group.degrees().sum();
        let b: u32 = self.subgroup.degrees().sum();
        a.saturating_sub(b)
    }

    /// Default truncation degree for graded enumerations: `2·Σ deg u_j`,
    /// raised to `Σ (deg x_i − 1)` so the top loop class `y_1⋯y_l` is included.
    pub fn default_cap(&self) -> u32 {
        let top: u32 = self.group.degrees().map(|d| d.saturating_sub(1)).sum();
        (2 * self.subgroup.degrees().sum::<u32>()).max(top)
    }

    /// Checks equal rank and that each `ρ(x_i)` is homogeneous of degree `deg x_i`.
    pub fn check_shape(&self) -> Result<()> {
        if self.group.rank() != self.subgroup.rank() {
            return Err(Error::Hypothesis(format!(
                "{}: rank {} of {} differs from rank {} of {}",
                self.name,
                self.group.rank(),
                self.group.name(),
                self.subgroup.rank(),
                self.subgroup.name()
            )));
        }
        for ((x, d), img) in self.group.generators().iter().zip(&self.restriction) {
            if img.is_zero() {
                return Err(Error::Hypothesis(format!("{}: restriction of {x} is zero", self.name)));
            }
            match img.homogeneous_degree() {
                Some(e) if e == *d => {}
                Some(e) => return Err(Error::DegreeMismatch { variable: x.clone(), expected: *d, found: e }),
                None => return Err(Error::NonHomogeneous(format!("restriction of {x}: {img}"))),
            }
        }
        Ok(())
    }

    /// `H*(BH)/(ρ(x))`, the cohomology of `G/H`.
    pub fn restriction_quotient(&self) -> Result<QuotientRing> {
        QuotientRing::new(IdealPresentation::new(&self.u_ring, self.restriction.clone())?)
    }

    /// `Π(1 − t^{deg xᵢ}) / Π(1 − t^{deg uⱼ})`.
    pub fn poincare_series(&self) -> PoincareSeries {
        PoincareSeries::new(self.x_degrees(), self.u_degrees())
    }

    /// `ρ(x_i)⊗1 − 1⊗ρ(x_i)` in `H*(BH)⊗H*(BH)` (second factor primed).
    pub fn difference_sequence(&self) -> Result<(RingRef, Vec<Polynomial>)> {
        let (ring, maps) = Ring::tensor(self.field, &[&self.u_ring, &self.u_ring])?;
        let seq = self.restriction.iter().map(|f| &f.embed(&ring, &maps[0]) - &f.embed(&ring, &maps[1])).collect();
        Ok((ring, seq))
    }
}

/// The series of a pair's restriction quotient.
pub fn poincare_series(pair: &PairDatum) -> PoincareSeries {
    pair.poincare_series()
}
