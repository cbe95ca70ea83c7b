use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_integer::Integer;

use super::jacobian::{jacobian_class_in, FundamentalClass};
use super::model::{GradedModel, MixedClass, ModelKind};
use super::table::OperationTable;
use super::zeta::{zeta_matrix_in, ZetaMatrix};
use crate::exactalg::{Field, Polynomial, Ring, Variable};
use crate::grobner::{FreeModuleDecomposer, IdealPresentation, QuotientRing};
use crate::liecat::{GroupPresentation, PairDatum};
use crate::{Error, Result};

/// `H*(BG)⊗Λ(y_1, …, y_l)` with `deg y_i = deg x_i − 1`.
pub fn loop_model(group: &GroupPresentation, field: Field) -> Result<GradedModel> {
    let odd = group
        .generators()
        .iter()
        .enumerate()
        .map(|(i, (_, d))| Variable::new(format!("y{}", i + 1), 0, d - 1))
        .collect();
    GradedModel::new(ModelKind::Loop { group: group.name().into() }, QuotientRing::free(&group.ring(field)), odd)
}

/// `H*(BK)⊗H*(BL)/(k*x_i⊗1 − 1⊗ℓ*x_i)` for two subgroups of one group;
/// returns the model and the variable maps of both factors.
pub fn interval_model(left: &PairDatum, right: &PairDatum) -> Result<(GradedModel, Vec<Vec<usize>>)> {
    if left.group() != right.group() {
        return Err(Error::Signature(format!(
            "labels {} and {} belong to different groups ({} vs {})",
            left.subgroup().name(),
            right.subgroup().name(),
            left.group().name(),
            right.group().name()
        )));
    }
    if left.field() != right.field() {
        return Err(Error::FieldMismatch);
    }
    let (ring, maps) = Ring::tensor(left.field(), &[left.u_ring(), right.u_ring()])?;
    let rels = left
        .restriction()
        .iter()
        .zip(right.restriction())
        .map(|(k, l)| &k.embed(&ring, &maps[0]) - &l.embed(&ring, &maps[1]))
        .filter(|p| !p.is_zero())
        .collect();
    let even = QuotientRing::new(IdealPresentation::new(&ring, rels)?)?;
    let kind = ModelKind::Interval { left: left.subgroup().name().into(), right: right.subgroup().name().into() };
    Ok((GradedModel::new(kind, even, Vec::new())?, maps))
}

/// The three presentations of the whistle sector for one pair, with the
/// ζ-matrix, the fundamental class and the `H*(BG)`-module decomposition of
/// `H*(BH)`.
#[derive(Clone, Debug)]
pub struct WhistleModels {
    pair: PairDatum,
    cap: u32,
    loop_model: Arc<GradedModel>,
    whistle_model: Arc<GradedModel>,
    interval: Arc<GradedModel>,
    maps: Vec<Vec<usize>>,
    quotient: QuotientRing,
    zeta: ZetaMatrix,
    det_zeta: Polynomial,
    fundamental: core::result::Result<FundamentalClass, Error>,
    decomposer: FreeModuleDecomposer,
    top_index: usize,
}

/// Builds the models; decompositions are prepared through degree `cap`.
pub fn build_models(pair: &PairDatum, cap: u32) -> Result<WhistleModels> {
    pair.check_shape()?;
    let quotient = pair.restriction_quotient()?;
    let basis = quotient
        .full_basis()
        .ok_or_else(|| Error::Hypothesis(format!("{}: H*(BH)/(ρ(x)) is infinite; ρ(x) is not regular", pair.name())))?;
    let loop_model = loop_model(pair.group(), pair.field())?;
    let whistle_model = GradedModel::new(
        ModelKind::Whistle { pair: pair.name().into() },
        QuotientRing::free(pair.u_ring()),
        loop_model.odd().to_vec(),
    )?;
    let (interval, maps) = interval_model(pair, pair)?;
    let identity: Vec<usize> = (0..pair.rank()).collect();
    let zeta = zeta_matrix_in(pair, interval.ring(), &maps, &identity)?;
    let det_zeta = interval.even().reduce(&zeta.entries.determinant()?);
    let fundamental = jacobian_class_in(pair, &quotient);
    let basis_polys: Vec<Polynomial> =
        basis.iter().map(|m| Polynomial::monomial(pair.u_ring(), m.clone(), pair.field().one())).collect();
    let top = super::jacobian::top_monomial(&quotient)?;
    let top_index = basis.iter().position(|m| *m == top).expect("top monomial is standard");
    let decomposer = FreeModuleDecomposer::new(
        QuotientRing::free(pair.x_ring()),
        QuotientRing::free(pair.u_ring()),
        pair.restriction().to_vec(),
        basis_polys,
        cap,
    )?;
    Ok(WhistleModels {
        pair: pair.clone(),
        cap,
        loop_model: Arc::new(loop_model),
        whistle_model: Arc::new(whistle_model),
        interval: Arc::new(interval),
        maps,
        quotient,
        zeta,
        det_zeta,
        fundamental,
        decomposer,
        top_index,
    })
}

impl WhistleModels {
    pub fn pair(&self) -> &PairDatum {
        &self.pair
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn loop_model(&self) -> &Arc<GradedModel> {
        &self.loop_model
    }

    pub fn whistle_model(&self) -> &Arc<GradedModel> {
        &self.whistle_model
    }

    pub fn interval(&self) -> &Arc<GradedModel> {
        &self.interval
    }

    /// Indices of the `u` (factor 0) and `v` (factor 1) variables in the interval ring.
    pub fn interval_maps(&self) -> &[Vec<usize>] {
        &self.maps
    }

    pub fn restriction_quotient(&self) -> &QuotientRing {
        &self.quotient
    }

    pub fn zeta(&self) -> &ZetaMatrix {
        &self.zeta
    }

    /// `ζ` for another telescoping order.
    pub fn zeta_with_order(&self, order: &[usize]) -> Result<ZetaMatrix> {
        zeta_matrix_in(&self.pair, self.interval.ring(), &self.maps, order)
    }

    /// Normal form of `det ζ` in the interval model.
    pub fn det_zeta(&self) -> &Polynomial {
        &self.det_zeta
    }

    pub fn fundamental_class(&self) -> Result<&FundamentalClass> {
        self.fundamental.as_ref().map_err(Clone::clone)
    }

    pub fn decomposer(&self) -> &FreeModuleDecomposer {
        &self.decomposer
    }

    /// `m`: the multiplication `H*(BH)⊗H*(BH) → H*(BH)`, setting `v := u`.
    pub fn multiply(&self, p: &Polynomial) -> Polynomial {
        let mut diag = alloc::vec![0usize; self.interval.ring().nvars()];
        for j in 0..self.pair.rank() {
            diag[self.maps[0][j]] = j;
            diag[self.maps[1][j]] = j;
        }
        p.embed(self.pair.u_ring(), &diag)
    }

    /// `ρ(γ)` placed in the second interval factor.
    pub fn restrict_to_right(&self, gamma: &Polynomial) -> Result<Polynomial> {
        let r = gamma.substitute(self.pair.restriction(), self.pair.u_ring(), true)?;
        Ok(r.embed(self.interval.ring(), &self.maps[1]))
    }

    /// `k*`: the loop model to the whistle model, `x ↦ ρ(x)`, `y ↦ y`.
    pub fn restrict_to_whistle(&self, c: &MixedClass) -> Result<MixedClass> {
        let mut terms = Vec::new();
        for (mask, gamma) in c.terms() {
            terms.push((mask, gamma.substitute(self.pair.restriction(), self.pair.u_ring(), true)?));
        }
        Ok(self.whistle_model.class(terms))
    }

    /// `h!`: `f(u)·y_1⋯y_l ↦ (1⊗f)·det ζ`, other exterior degrees to 0.
    pub fn integrate_whistle(&self, c: &MixedClass) -> MixedClass {
        let full = self.whistle_model.full_mask();
        let p = match c.coefficient(full) {
            Some(f) => &f.embed(self.interval.ring(), &self.maps[1]) * &self.det_zeta,
            None => Polynomial::zero(self.interval.ring()),
        };
        self.interval.even_class(p)
    }

    /// `Dμ_W = h!∘k*`: loop classes to interval classes.
    pub fn dmu_whistle(&self, c: &MixedClass) -> Result<MixedClass> {
        Ok(self.integrate_whistle(&self.restrict_to_whistle(c)?))
    }

    /// `Dμ_{W^op} = k!∘h*`: the `b_top` coefficient of `m(c)` divided by `λ`,
    /// in exterior degree 0 of the loop model.
    pub fn dmu_whistle_op(&self, c: &MixedClass) -> Result<MixedClass> {
        let fc = self.fundamental_class()?;
        if !c.is_even() {
            return Err(Error::Invalid("interval classes have no odd part".into()));
        }
        let Some(p) = c.even_part() else {
            return Ok(self.loop_model.zero());
        };
        let top = self.decomposer.coefficient(&self.multiply(p), self.top_index)?;
        let inv = fc.lambda.inv().expect("λ ≠ 0");
        Ok(self.loop_model.even_class(top.scale(&inv)))
    }

    /// `deg Dμ_W = −dim H`.
    pub fn dmu_whistle_shift(&self) -> i64 {
        -(self.pair.dim_subgroup() as i64)
    }

    /// `deg Dμ_{W^op} = −dim G/H`.
    pub fn dmu_whistle_op_shift(&self) -> i64 {
        -(self.pair.dim_homogeneous_space() as i64)
    }

    /// Rejects `W∘W^op` over `𝔽_p` when some `deg ρ(x_i)` is divisible by `p`.
    pub fn check_composite_condition(&self) -> Result<()> {
        if let Field::Prime(p) = self.pair.field() {
            for (x, d) in self.pair.group().generators() {
                if (*d as u64).gcd(&p) != 1 {
                    return Err(Error::Hypothesis(format!(
                        "composite-unreliable: deg ρ({x}) = {d} is not prime to {p}"
                    )));
                }
            }
        }
        self.fundamental_class().map(|_| ())
    }

    pub fn dmu_whistle_table(&self, cap: u32) -> Result<OperationTable> {
        let mut entries = Vec::new();
        for (m, mask) in self.loop_model.basis_up_to(cap) {
            let v = self.dmu_whistle(&self.loop_model.basis_class(&m, mask))?;
            entries.push((m, mask, v));
        }
        Ok(OperationTable::computed(self.loop_model.clone(), self.interval.clone(), cap, entries, true))
    }

    pub fn dmu_whistle_op_table(&self, cap: u32) -> Result<OperationTable> {
        let mut entries = Vec::new();
        for (m, mask) in self.interval.basis_up_to(cap) {
            let v = self.dmu_whistle_op(&self.interval.basis_class(&m, mask))?;
            entries.push((m, mask, v));
        }
        Ok(OperationTable::computed(self.interval.clone(), self.loop_model.clone(), cap, entries, true))
    }

    /// The dual of `W∘W^op` (on loop classes) or `W^op∘W` (on interval classes).
    pub fn composite_whistle(&self, direction: Direction, cap: u32) -> Result<OperationTable> {
        match direction {
            Direction::WAfterWop => {
                self.check_composite_condition()?;
                let mut entries = Vec::new();
                for (m, mask) in self.loop_model.basis_up_to(cap) {
                    let mid = self.dmu_whistle(&self.loop_model.basis_class(&m, mask))?;
                    entries.push((m, mask, self.dmu_whistle_op(&mid)?));
                }
                Ok(OperationTable::computed(self.loop_model.clone(), self.loop_model.clone(), cap, entries, true))
            }
            Direction::WopAfterW => {
                let mut entries = Vec::new();
                for (m, mask) in self.interval.basis_up_to(cap) {
                    let mid = self.dmu_whistle_op(&self.interval.basis_class(&m, mask))?;
                    entries.push((m, mask, self.dmu_whistle(&mid)?));
                }
                Ok(OperationTable::computed(self.interval.clone(), self.interval.clone(), cap, entries, true))
            }
        }
    }
}

/// Which whistle composite: `W∘W^op` is the cylinder with one hole.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    WAfterWop,
    WopAfterW,
}

/// The B-V derivation tabulated on the loop model up to `cap`.
pub fn bv_table(model: &Arc<GradedModel>, cap: u32) -> OperationTable {
    let entries = model
        .basis_up_to(cap)
        .into_iter()
        .map(|(m, mask)| {
            let v = bv_operator(model, &model.basis_class(&m, mask));
            (m, mask, v)
        })
        .collect();
    OperationTable::computed(model.clone(), model.clone(), cap, entries, true)
}

/// The B-V derivation on a loop model: `x_i ↦ y_i`, `y_i ↦ 0`, graded Leibniz.
pub fn bv_operator(model: &GradedModel, c: &MixedClass) -> MixedClass {
    let n = model.odd().len().min(model.ring().nvars());
    let mut out = Vec::new();
    for (mask, gamma) in c.terms() {
        for i in 0..n {
            if mask & (1 << i) != 0 {
                continue;
            }
            let d = gamma.partial_derivative(i);
            if d.is_zero() {
                continue;
            }
            let neg = super::model::wedge_sign(1 << i, mask);
            out.push((mask | (1 << i), if neg { -&d } else { d }));
        }
    }
    model.class(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing::{sp1_t1, u2_t2, u2_trivial};

    #[test]
    fn models_of_the_flag_variety() {
        let w = build_models(&u2_t2(), 8).unwrap();
        let lp = w.loop_model();
        assert_eq!(lp.odd().iter().map(|v| v.degree).collect::<Vec<_>>(), alloc::vec![1, 3]);
        let gb: Vec<alloc::string::String> =
            w.interval().even().groebner_basis().iter().map(|g| format!("{g}")).collect();
        assert_eq!(gb, ["u1 + u2 - u1' - u2'", "u2^2 - u2*u1' - u2*u2' + u1'*u2'"]);
        let z = w.zeta();
        assert_eq!(format!("{}", z.entries.get(1, 0)), "u2");
        assert_eq!(format!("{}", z.entries.get(1, 1)), "u1'");
        assert_eq!(w.interval().format(&w.interval().even_class(w.det_zeta().clone())), "-u2⊗1 + 1⊗u1");
        let fc = w.fundamental_class().unwrap();
        assert_eq!(format!("{}", fc.jacobian), "u1 - u2");
        assert_eq!(fc.lambda, Field::Rational.from_i64(-2));
        assert_eq!(format!("{}", w.multiply(w.det_zeta())), "u1 - u2");
    }

    #[test]
    fn dual_whistle_values() {
        let w = build_models(&u2_t2(), 8).unwrap();
        let lp = w.loop_model();
        let iv = w.interval();
        let y12 = lp.parse("y1*y2").unwrap();
        let out = w.dmu_whistle(&y12).unwrap();
        assert_eq!(iv.format(&out), "-u2⊗1 + 1⊗u1");
        assert!(w.dmu_whistle(&lp.parse("x1*y1").unwrap()).unwrap().is_zero());
        let x1 = w.dmu_whistle(&lp.parse("x1*y1*y2").unwrap()).unwrap();
        let expected = iv.parse("(1⊗u1 + 1⊗u2)*(1⊗u1 - u2⊗1)").unwrap();
        assert_eq!(x1, expected);

        let lam = iv.parse("1⊗u1 - 1⊗u2").unwrap();
        assert_eq!(w.dmu_whistle_op(&lam).unwrap(), lp.one());
        let half = w.dmu_whistle_op(&iv.parse("u1⊗1").unwrap()).unwrap();
        assert_eq!(lp.format(&half), "1/2");
        let gamma = iv.parse("(u1+u2)⊗(u1-u2)").unwrap();
        assert_eq!(w.dmu_whistle_op(&gamma).unwrap(), lp.parse("x1").unwrap());
    }

    #[test]
    fn second_factor_spellings() {
        let w = build_models(&u2_t2(), 8).unwrap();
        let iv = w.interval();
        let tensor = iv.parse("1 (x) u1 - u2 (x) 1").unwrap();
        assert_eq!(iv.parse("u1' - u2").unwrap(), tensor);
        assert_eq!(iv.parse("v1 - u2").unwrap(), tensor);
        assert_eq!(iv.format(&tensor), "-u2⊗1 + 1⊗u1");
    }

    #[test]
    fn composites() {
        let w = build_models(&u2_t2(), 8).unwrap();
        let t = w.composite_whistle(Direction::WAfterWop, 8).unwrap();
        let lp = w.loop_model();
        let y12 = lp.parse("y1*y2").unwrap();
        assert_eq!(t.apply(&y12).unwrap(), lp.one());
        assert!(w.composite_whistle(Direction::WopAfterW, 8).unwrap().is_zero());

        let f2 = u2_t2().with_field(Field::prime_allow_two(2).unwrap()).unwrap();
        let w2 = build_models(&f2, 8).unwrap();
        assert!(w2.composite_whistle(Direction::WAfterWop, 8).is_err());
        let f5 = u2_t2().with_field(Field::prime(5).unwrap()).unwrap();
        let w5 = build_models(&f5, 8).unwrap();
        let t5 = w5.composite_whistle(Direction::WAfterWop, 8).unwrap();
        assert_eq!(t5.apply(&w5.loop_model().parse("y1*y2").unwrap()).unwrap(), w5.loop_model().one());
    }

    #[test]
    fn trivial_and_rank_one() {
        let w = build_models(&u2_trivial(), 8).unwrap();
        assert_eq!(*w.det_zeta(), Polynomial::one(w.interval().ring()));
        let fc = w.fundamental_class().unwrap();
        assert!(fc.b_top.is_one() && fc.lambda.is_one());

        let s = build_models(&sp1_t1(), 8).unwrap();
        assert_eq!(format!("{}", s.zeta().entries.get(0, 0)), "u + u'");
        let fc = s.fundamental_class().unwrap();
        assert_eq!(format!("{}", fc.jacobian), "2*u");
        assert_eq!(format!("{}", s.loop_model().odd()[0].degree), "3");
    }

    #[test]
    fn bv_derivation() {
        let w = build_models(&u2_t2(), 8).unwrap();
        let lp = w.loop_model();
        let d = |s: &str| bv_operator(lp, &lp.parse(s).unwrap());
        assert_eq!(d("x1"), lp.parse("y1").unwrap());
        assert!(d("y1*y2").is_zero());
        assert_eq!(d("x1*y2"), lp.parse("y1*y2").unwrap());
        assert_eq!(d("x2*y1"), lp.parse("y2*y1").unwrap());
        let sq = bv_operator(lp, &d("x1^2*x2 + x2*y1"));
        assert!(sq.is_zero());
        assert!(!w.dmu_whistle(&d("x1*y2")).unwrap().is_zero());
    }
}
