use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use super::ast::{Expr, Generator, GeneratorKind};
use super::signature::{check_signature, BoundarySignature};
use crate::exactalg::Field;
use crate::liecat::{GroupPresentation, PairDatum};
use crate::openstr::{build_open_models, OpenModels};
use crate::whistle::{build_models, bv_table, interval_model, loop_model, GradedModel, OperationTable, WhistleModels};
use crate::{Error, Result};

/// Reason attached to an unregistered `pants_plug` generator.
pub const PANTS_UNSUPPORTED: &str = "requires external closed-sector formula";

/// Supplies the dual operation of a closed-sector generator plugged in as
/// `pants_plug(name)`: a table from the loop model to its tensor square.
pub trait ClosedPlugin: Send + Sync {
    fn table(&self, loop_model: &Arc<GradedModel>, square: &Arc<GradedModel>, cap: u32) -> Result<OperationTable>;
}

/// Plug-ins by name; filled once, then only read.
#[derive(Clone, Default)]
pub struct PluginRegistry {
    plugins: BTreeMap<String, Arc<dyn ClosedPlugin>>,
}

impl PluginRegistry {
    pub fn new() -> PluginRegistry {
        PluginRegistry::default()
    }

    pub fn register(&mut self, name: impl Into<String>, plugin: Arc<dyn ClosedPlugin>) {
        self.plugins.insert(name.into(), plugin);
    }

    pub fn get(&self, name: &str) -> Option<&Arc<dyn ClosedPlugin>> {
        self.plugins.get(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.plugins.keys().map(String::as_str)
    }
}

impl fmt::Debug for PluginRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.plugins.keys()).finish()
    }
}

/// The evaluated dual operation of a word.
#[derive(Clone, Debug)]
pub struct OperationValue {
    pub expr: Expr,
    pub group: String,
    pub input: BoundarySignature,
    pub output: BoundarySignature,
    pub table: OperationTable,
}

impl OperationValue {
    pub fn is_zero(&self) -> bool {
        self.table.is_zero()
    }

    pub fn is_unsupported(&self) -> bool {
        self.table.is_unsupported()
    }

    pub fn up_to_scalar(&self) -> bool {
        self.table.up_to_scalar
    }
}

struct Context {
    group: GroupPresentation,
    field: Field,
    cap: u32,
}

/// Evaluates words against a catalog, caching models and generator tables.
pub struct Evaluator<'a> {
    catalog: &'a [PairDatum],
    plugins: PluginRegistry,
    cap: Option<u32>,
    whistle: BTreeMap<(String, u32), Arc<WhistleModels>>,
    open: BTreeMap<(String, String, String, u32), Arc<OpenModels>>,
    leaves: BTreeMap<(String, Generator, u32), OperationTable>,
}

impl<'a> Evaluator<'a> {
    pub fn new(catalog: &'a [PairDatum]) -> Evaluator<'a> {
        Evaluator {
            catalog,
            plugins: PluginRegistry::new(),
            cap: None,
            whistle: BTreeMap::new(),
            open: BTreeMap::new(),
            leaves: BTreeMap::new(),
        }
    }

    /// Fixes the degree cap; by default it is the largest default cap of the
    /// pairs a word mentions.
    pub fn with_cap(mut self, cap: Option<u32>) -> Self {
        self.cap = cap;
        self
    }

    pub fn with_plugins(mut self, plugins: PluginRegistry) -> Self {
        self.plugins = plugins;
        self
    }

    fn groups(&self) -> Vec<&'a str> {
        let mut out: Vec<&str> = Vec::new();
        for p in self.catalog {
            if !out.contains(&p.group().name()) {
                out.push(p.group().name());
            }
        }
        out
    }

    fn candidates(&self, label: &str) -> Vec<&'a PairDatum> {
        self.catalog.iter().filter(|p| p.subgroup().name() == label || p.name() == label).collect()
    }

    /// The ambient group of a word: the first catalog group in which every
    /// label resolves (restricted to `directive` when given). A note is
    /// returned when the choice was not forced.
    pub fn resolve_group(&self, e: &Expr, directive: Option<&str>) -> Result<(String, Option<String>)> {
        let mut groups = self.groups();
        if let Some(d) = directive {
            if !groups.contains(&d) {
                return Err(Error::UnknownLabel(d.to_string()));
            }
            groups.retain(|g| *g == d);
        }
        for l in e.labels() {
            let c = self.candidates(l);
            if c.is_empty() {
                return Err(Error::UnknownLabel(l.to_string()));
            }
            groups.retain(|g| c.iter().any(|p| p.group().name() == *g));
            if groups.is_empty() {
                return Err(Error::Signature(format!("the labels of `{e}` are not subgroups of one group")));
            }
        }
        let Some(first) = groups.first() else {
            return Err(Error::Invalid("the catalog is empty".into()));
        };
        let note = (groups.len() > 1)
            .then(|| format!("group {first} chosen among {}; a `group` directive selects another", groups.join(", ")));
        Ok((first.to_string(), note))
    }

    pub fn resolve_label(&self, group: &str, label: &str) -> Result<&'a PairDatum> {
        self.candidates(label)
            .into_iter()
            .find(|p| p.group().name() == group)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn evaluate(&mut self, e: &Expr, directive: Option<&str>) -> Result<OperationValue> {
        let (input, output) = check_signature(e)?;
        let (group, note) = self.resolve_group(e, directive)?;
        let pairs: Vec<&PairDatum> =
            e.labels().into_iter().map(|l| self.resolve_label(&group, l)).collect::<Result<_>>()?;
        let home = self.catalog.iter().find(|p| p.group().name() == group).expect("resolved group has a pair");
        let cap = self.cap.unwrap_or_else(|| {
            pairs.iter().map(|p| p.default_cap()).max().unwrap_or_else(|| 2 * home.group().degrees().sum::<u32>())
        });
        let ctx = Context { group: home.group().clone(), field: home.field(), cap };
        let mut table = self.table(e, &ctx)?;
        if let Some(n) = note {
            table.notes.push(n);
        }
        Ok(OperationValue { expr: e.clone(), group, input, output, table })
    }

    fn table(&mut self, e: &Expr, ctx: &Context) -> Result<OperationTable> {
        match e {
            Expr::Gen(g) => self.leaf(g, ctx),
            Expr::Union(xs) => {
                let parts = xs.iter().map(|x| self.table(x, ctx)).collect::<Result<Vec<_>>>()?;
                OperationTable::tensor(ctx.field, &parts, ctx.cap)
            }
            Expr::Seq(xs) => {
                let mut acc = self.table(&xs[0], ctx)?;
                for x in &xs[1..] {
                    let next = self.table(x, ctx)?;
                    if acc.codomain.ring() != next.domain.ring() || acc.codomain.odd() != next.domain.odd() {
                        return Err(Error::Signature(format!("models do not match before `{x}`")));
                    }
                    acc = acc.then(&next)?;
                }
                Ok(acc)
            }
        }
    }

    fn whistle_models(&mut self, pair: &PairDatum, cap: u32) -> Result<Arc<WhistleModels>> {
        let key = (pair.name().to_string(), cap);
        if let Some(w) = self.whistle.get(&key) {
            return Ok(w.clone());
        }
        let w = Arc::new(build_models(pair, cap)?);
        self.whistle.insert(key, w.clone());
        Ok(w)
    }

    fn open_models(&mut self, k: &PairDatum, h: &PairDatum, l: &PairDatum, cap: u32) -> Result<Arc<OpenModels>> {
        let key = (k.name().to_string(), h.name().to_string(), l.name().to_string(), cap);
        if let Some(m) = self.open.get(&key) {
            return Ok(m.clone());
        }
        let m = Arc::new(build_open_models(k, h, l, cap)?);
        self.open.insert(key, m.clone());
        Ok(m)
    }

    fn leaf(&mut self, g: &Generator, ctx: &Context) -> Result<OperationTable> {
        let key = (ctx.group.name().to_string(), g.clone(), ctx.cap);
        if let Some(t) = self.leaves.get(&key) {
            return Ok(t.clone());
        }
        let cap = ctx.cap;
        let group = ctx.group.name().to_string();
        let pair = |i: usize| self.resolve_label(&group, &g.args[i]);
        let lp = || loop_model(&ctx.group, ctx.field).map(Arc::new);
        let t = match g.kind {
            GeneratorKind::Whistle => {
                let p = pair(0)?;
                self.whistle_models(p, cap)?.dmu_whistle_table(cap)?
            }
            GeneratorKind::Cowhistle => {
                let p = pair(0)?;
                self.whistle_models(p, cap)?.dmu_whistle_op_table(cap)?
            }
            GeneratorKind::Upsilon | GeneratorKind::Coupsilon => {
                let (k, h, l) = (pair(0)?, pair(1)?, pair(2)?);
                let m = self.open_models(k, h, l, cap)?;
                if g.kind == GeneratorKind::Upsilon {
                    m.dmu_upsilon_table(cap)?
                } else {
                    m.dmu_upsilon_op_table(cap)?
                }
            }
            GeneratorKind::CylClosed => OperationTable::identity(lp()?, cap),
            GeneratorKind::CylOpen => {
                let (model, _) = interval_model(pair(0)?, pair(1)?)?;
                OperationTable::identity(Arc::new(model), cap)
            }
            GeneratorKind::Bv => bv_table(&lp()?, cap),
            GeneratorKind::PantsPlug => {
                let l = lp()?;
                let square = Arc::new(GradedModel::tensor(ctx.field, &[l.clone(), l.clone()])?);
                match self.plugins.get(&g.args[0]) {
                    Some(p) => p.table(&l, &square, cap)?,
                    None => OperationTable::unsupported(l, square, cap, format!("{g}: {PANTS_UNSUPPORTED}")),
                }
            }
        };
        self.leaves.insert(key, t.clone());
        Ok(t)
    }
}

/// One-shot evaluation of a word.
pub fn evaluate(
    e: &Expr,
    catalog: &[PairDatum],
    degree_cap: Option<u32>,
    directive: Option<&str>,
) -> Result<OperationValue> {
    Evaluator::new(catalog).with_cap(degree_cap).evaluate(e, directive)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cobdsl::{normalize, parse};
    use crate::testing::{sp1_t1, u2_t2, u2_trivial};

    fn catalog() -> Vec<PairDatum> {
        alloc::vec![u2_t2(), sp1_t1(), u2_trivial()]
    }

    #[test]
    fn cylinder_with_a_hole() {
        let cat = catalog();
        let mut ev = Evaluator::new(&cat).with_cap(Some(8));
        let v = ev.evaluate(&parse("whistle(T2); cowhistle(T2)").unwrap(), None).unwrap();
        assert_eq!(v.group, "U2");
        let lp = v.table.domain.clone();
        let y = lp.parse("y1*y2").unwrap();
        assert_eq!(v.table.apply(&y).unwrap(), lp.one());
        let rev = ev.evaluate(&parse("cowhistle(T2); whistle(T2)").unwrap(), None).unwrap();
        assert!(rev.is_zero());
        let two = ev.evaluate(&parse("whistle(T2); cowhistle(T2); whistle(T2); cowhistle(T2)").unwrap(), None).unwrap();
        assert!(two.is_zero());
        let id = ev.evaluate(&parse("cyl_closed").unwrap(), Some("U2")).unwrap();
        assert!(id.table.is_identity());
    }

    #[test]
    fn twist_and_unions() {
        let cat = catalog();
        let mut ev = Evaluator::new(&cat).with_cap(Some(8));
        let v = ev.evaluate(&parse("bv; whistle(T2)").unwrap(), None).unwrap();
        let lp = v.table.domain.clone();
        assert!(!v.table.apply(&lp.parse("x1*y2").unwrap()).unwrap().is_zero());
        assert!(ev.evaluate(&parse("bv; bv").unwrap(), Some("U2")).unwrap().is_zero());
        let u = ev.evaluate(&parse("cyl_closed | bv").unwrap(), Some("U2")).unwrap();
        let sq = u.table.domain.clone();
        // (1⊗Δ)(y1⊗x1) = -y1⊗y1
        let img = u.table.apply(&sq.parse("y1⊗x1").unwrap()).unwrap();
        assert_eq!(img, sq.parse("-y1⊗y1").unwrap());
        let nested = ev.evaluate(&parse("bv | (cyl_closed | bv)").unwrap(), Some("U2")).unwrap();
        let flat = ev.evaluate(&normalize(&parse("bv | (cyl_closed | bv)").unwrap()), Some("U2")).unwrap();
        assert!(nested.table.same_as(&flat.table, false));
    }

    #[test]
    fn labels_and_plugins() {
        let cat = catalog();
        let mut ev = Evaluator::new(&cat).with_cap(Some(6));
        assert!(matches!(ev.evaluate(&parse("whistle(T9)").unwrap(), None), Err(Error::UnknownLabel(l)) if l == "T9"));
        assert!(matches!(ev.evaluate(&parse("whistle(T2) | whistle(T1)").unwrap(), None), Err(Error::Signature(_))));
        let p = ev.evaluate(&parse("pants_plug(km)").unwrap(), None).unwrap();
        assert!(p.is_unsupported());
        let v = ev.evaluate(&parse("bv; pants_plug(km)").unwrap(), None).unwrap();
        assert!(v.is_unsupported());
        let o = ev.evaluate(&parse("upsilon(T2,T2,T2)").unwrap(), None).unwrap();
        assert!(o.is_zero());
        assert!(ev.evaluate(&parse("cyl_open(T2,U2)").unwrap(), None).unwrap().table.is_identity());
    }
}
