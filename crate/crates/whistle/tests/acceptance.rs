//! One pass/fail line per acceptance criterion. Every comparison is exact;
//! "up to scalar" appears only where a criterion says so.

use std::time::Instant;

use whistle::builtin_pairs;
use whistle_core::cobdsl::{check_signature, parse, Evaluator, Expr};
use whistle_core::exactalg::{Field, Polynomial};
use whistle_core::grobner::{koszul_homology_dims, QuotientRing};
use whistle_core::liecat::{validate_pair, PairDatum};
use whistle_core::openstr::build_open_models;
use whistle_core::whistle::{build_models, permutations, zeta_matrix_in, Direction, WhistleModels};

/// Cap for the composition sweep of criterion 9.
const WORD_CAP: u32 = 8;
/// Telescoping orders are exhausted for rank at most this.
const ALL_ORDERS_RANK: usize = 3;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn(&Ctx) -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Builtin pairs with their models at the default cap, built once.
struct Ctx {
    pairs: Vec<PairDatum>,
    models: Vec<Result<WhistleModels, String>>,
}

impl Ctx {
    fn new(pairs: Vec<PairDatum>) -> Ctx {
        let models =
            pairs.iter().map(|p| build_models(p, p.default_cap()).map_err(|e| format!("{}: {e}", p.name()))).collect();
        Ctx { pairs, models }
    }

    fn iter(&self) -> impl Iterator<Item = (&PairDatum, Result<&WhistleModels, String>)> {
        self.pairs.iter().zip(&self.models).map(|(p, m)| (p, m.as_ref().map_err(Clone::clone)))
    }
}

fn top_loop_class(w: &WhistleModels) -> whistle_core::whistle::MixedClass {
    let lp = w.loop_model();
    let idx: Vec<usize> = (0..lp.odd().len()).collect();
    lp.odd_product(&idx)
}

fn criterion_1(ctx: &Ctx) -> Outcome {
    let mut checked = 0;
    for (p, w) in ctx.iter() {
        let w = w?;
        let ring = w.interval().ring();
        let maps = w.interval_maps();
        let l = p.rank();
        let orders = if l <= ALL_ORDERS_RANK { permutations(l) } else { vec![(0..l).collect()] };
        for order in orders {
            let z = zeta_matrix_in(p, ring, maps, &order).map_err(|e| format!("{} {order:?}: {e}", p.name()))?;
            for (i, f) in p.restriction().iter().enumerate() {
                let mut lhs = Polynomial::zero(ring);
                for (j, (&u, &v)) in maps[0].iter().zip(&maps[1]).enumerate() {
                    let d = &Polynomial::var(ring, u) - &Polynomial::var(ring, v);
                    lhs = &lhs + &(z.entries.get(i, j) * &d);
                }
                let rhs = &f.embed(ring, &maps[0]) - &f.embed(ring, &maps[1]);
                ensure(lhs == rhs, || format!("{} {order:?} row {i}: Σζ(u−v) = {lhs} ≠ {rhs}", p.name()))?;
                for j in 0..l {
                    let m = w.multiply(z.entries.get(i, j));
                    let d = f.partial_derivative(j);
                    ensure(m == d, || format!("{} {order:?}: m(ζ_{i}{j}) = {m} ≠ {d}", p.name()))?;
                }
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} (pair, order) combinations"))
}

fn criterion_2(ctx: &Ctx) -> Outcome {
    let pairs = &ctx.pairs;
    for (p, w) in ctx.iter() {
        let w = w?;
        let v = w.dmu_whistle(&top_loop_class(w)).map_err(|e| e.to_string())?;
        ensure(!v.is_zero(), || format!("{}: Dμ_W(y_1⋯y_l) = 0", p.name()))?;
        if p.name() == "U2_T2" {
            let fixture: serde_json::Value =
                serde_json::from_str(include_str!("fixtures/u2_t2_hand.json")).map_err(|e| e.to_string())?;
            let iv = w.interval();
            let expected = iv.parse(fixture["dmu_whistle_top"].as_str().unwrap()).map_err(|e| e.to_string())?;
            ensure(v == expected, || format!("U2_T2: {} ≠ hand value {}", iv.format(&v), iv.format(&expected)))?;
            let m = w.multiply(v.even_part().unwrap());
            let hand = whistle_core::exactalg::parse_polynomial(fixture["m_image"].as_str().unwrap(), p.u_ring())
                .map_err(|e| e.to_string())?;
            ensure(m == hand, || format!("U2_T2: m-image {m} ≠ {hand}"))?;
        }
    }
    Ok(format!("{} pairs nonzero, U2_T2 m-image u1 - u2", pairs.len()))
}

fn criterion_3(ctx: &Ctx) -> Outcome {
    let pairs = &ctx.pairs;
    for (p, w) in ctx.iter() {
        let w = w?;
        let fc = w.fundamental_class().map_err(|e| format!("{}: {e}", p.name()))?;
        let iv = w.interval();
        let lam = iv.even_class(fc.jacobian.embed(iv.ring(), &w.interval_maps()[1]));
        let v = w.dmu_whistle_op(&lam).map_err(|e| e.to_string())?;
        ensure(v == w.loop_model().one(), || format!("{}: Dμ_W^op(1⊗Λ_W) = {}", p.name(), w.loop_model().format(&v)))?;
    }
    Ok(format!("{} pairs", pairs.len()))
}

fn composite_top(p: &PairDatum, w: &WhistleModels) -> Result<whistle_core::whistle::MixedClass, String> {
    w.check_composite_condition().map_err(|e| e.to_string())?;
    let mid = w.dmu_whistle(&top_loop_class(w)).map_err(|e| e.to_string())?;
    let v = w.dmu_whistle_op(&mid).map_err(|e| e.to_string())?;
    ensure(v == w.loop_model().one(), || format!("{}: W∘W^op(y_1⋯y_l) = {}", p.name(), w.loop_model().format(&v)))?;
    Ok(v)
}

fn criterion_4(ctx: &Ctx) -> Outcome {
    let pairs = &ctx.pairs;
    for (p, w) in ctx.iter() {
        composite_top(p, w?)?;
    }
    let u2 = pairs.iter().find(|p| p.name() == "U2_T2").unwrap();
    let f5 = u2.with_field(Field::prime(5).unwrap()).map_err(|e| e.to_string())?;
    let report = validate_pair(&f5, f5.default_cap());
    ensure(report.usable() && report.composite_reliable(), || format!("F5: {}", report.summary()))?;
    let w5 = build_models(&f5, f5.default_cap()).map_err(|e| e.to_string())?;
    composite_top(&f5, &w5).map_err(|e| format!("F5: {e}"))?;
    let f2 = u2.with_field(Field::prime_allow_two(2).unwrap()).map_err(|e| e.to_string())?;
    let report = validate_pair(&f2, f2.default_cap());
    ensure(!report.composite_reliable(), || "F2 report does not flag the composite".into())?;
    let w = build_models(&f2, f2.default_cap()).map_err(|e| e.to_string())?;
    ensure(w.check_composite_condition().is_err(), || "F2 composite accepted".into())?;
    ensure(w.composite_whistle(Direction::WAfterWop, 4).is_err(), || "F2 composite table built".into())?;
    Ok(format!("{} pairs give 1, F5 gives 1, F2 rejected", pairs.len()))
}

fn criterion_5(ctx: &Ctx) -> Outcome {
    let pairs = &ctx.pairs;
    let mut entries = 0;
    for (p, w) in ctx.iter() {
        let w = w?;
        let cap = 2 * p.subgroup().degrees().sum::<u32>();
        let t = w.composite_whistle(Direction::WopAfterW, cap).map_err(|e| e.to_string())?;
        ensure(t.is_zero(), || format!("{}: W^op∘W has a nonzero entry", p.name()))?;
        entries += t.entries.len();
        let pairs_here: Vec<PairDatum> = vec![p.clone()];
        let word = parse(&format!("whistle({0}); cowhistle({0}); whistle({0}); cowhistle({0})", p.subgroup().name()))
            .map_err(|e| e.to_string())?;
        let v = Evaluator::new(&pairs_here).with_cap(Some(cap)).evaluate(&word, None).map_err(|e| e.to_string())?;
        ensure(v.is_zero(), || format!("{}: two-hole word is nonzero", p.name()))?;
    }
    Ok(format!("{} pairs, {entries} table entries all zero, two-hole words zero", pairs.len()))
}

fn criterion_6(ctx: &Ctx) -> Outcome {
    let pairs = &ctx.pairs;
    let mut degrees = 0;
    for name in ["U2_T2", "U3_T3"] {
        let p = pairs.iter().find(|p| p.name() == name).unwrap();
        let cap = p.default_cap();
        let m = build_open_models(p, p, p, cap).map_err(|e| e.to_string())?;
        let witness = m.upsilon_witness(cap).map_err(|e| format!("{name}: {e}"))?;
        ensure(witness.len() == cap as usize + 1, || format!("{name}: witness covers {} degrees", witness.len()))?;
        for w in &witness {
            ensure(w.holds(), || format!("{name}: witness fails in degree {}", w.degree))?;
        }
        degrees += witness.len();
        let t = m.dmu_upsilon_table(cap).map_err(|e| e.to_string())?;
        ensure(t.is_zero(), || format!("{name}: Dμ_Υ table nonzero"))?;
        let v = m.dmu_upsilon_op(&m.padded_lambda().map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ensure(v == m.open_interval().one(), || {
            format!("{name}: Dμ_Υ^op(Λ_Υ padded) = {}", m.open_interval().format(&v))
        })?;
    }
    Ok(format!("T2 ⊂ U2 and T3 ⊂ U3, witness in {degrees} degrees"))
}

fn criterion_7(ctx: &Ctx) -> Outcome {
    let pairs = &ctx.pairs;
    for (p, w) in ctx.iter() {
        let w = w?;
        let lp = w.loop_model();
        let odd: Vec<usize> = (1..lp.odd().len()).collect();
        let x1 = lp.even_class(Polynomial::var(lp.ring(), 0));
        let class = lp.mul(&x1, &lp.odd_product(&odd));
        let cap = class.homogeneous_degree(lp).unwrap();
        let word = parse(&format!("bv; whistle({})", p.subgroup().name())).map_err(|e| e.to_string())?;
        let here = vec![p.clone()];
        let v = Evaluator::new(&here).with_cap(Some(cap)).evaluate(&word, None).map_err(|e| e.to_string())?;
        let img = v
            .table
            .apply(&v.table.domain.parse(&lp.format(&class)).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        ensure(!img.is_zero(), || format!("{}: D(Δ∘μ_W)({}) = 0", p.name(), lp.format(&class)))?;
    }
    Ok(format!("{} pairs nonzero at x1*y2⋯y_l", pairs.len()))
}

/// `Π(1 − t^{d_i}) / Π(1 − t^{e_j})` expanded through `up_to` by direct
/// convolution, independent of the series module.
fn series_product(num: &[u32], den: &[u32], up_to: usize) -> Vec<i128> {
    let mut c = vec![0i128; up_to + 1];
    c[0] = 1;
    for &d in num {
        for k in (d as usize..=up_to).rev() {
            c[k] -= c[k - d as usize];
        }
    }
    for &e in den {
        for k in e as usize..=up_to {
            c[k] += c[k - e as usize];
        }
    }
    c
}

fn criterion_8(ctx: &Ctx) -> Outcome {
    let pairs = &ctx.pairs;
    let mut weyl = Vec::new();
    for p in pairs {
        let cap = p.default_cap();
        let (ring, seq) = p.difference_sequence().map_err(|e| e.to_string())?;
        let h = koszul_homology_dims(&seq, &QuotientRing::free(&ring), cap).map_err(|e| e.to_string())?;
        ensure(h.vanishes_above_zero(), || format!("{}: Koszul H_{:?} ≠ 0", p.name(), h.first_nonzero()))?;
        let q = p.restriction_quotient().map_err(|e| e.to_string())?;
        let basis = q.full_basis().ok_or_else(|| format!("{}: quotient infinite", p.name()))?;
        let counts: Vec<i128> = basis.counts().into_iter().map(|c| c as i128).collect();
        let top = counts.len() + 8;
        let expected = series_product(&p.x_degrees(), &p.u_degrees(), top);
        for (d, e) in expected.iter().enumerate() {
            let got = counts.get(d).copied().unwrap_or(0);
            ensure(got == *e, || format!("{}: degree {d} has {got} basis monomials, series says {e}", p.name()))?;
        }
        let dim = basis.total.unwrap_or(0) as u64;
        if let (Some(wg), Some(wh)) = (p.group().weyl_order(), p.subgroup().weyl_order()) {
            ensure(wg % wh == 0 && wg / wh == dim, || format!("{}: |W_G|/|W_H| = {wg}/{wh} but dim {dim}", p.name()))?;
        }
        if ["U2_T2", "U3_T3", "U3_U1xU2", "Sp2_T2"].contains(&p.name()) {
            weyl.push(format!("{}={dim}", p.name()));
        }
    }
    ensure(weyl == ["U2_T2=2", "U3_T3=6", "U3_U1xU2=3", "Sp2_T2=8"], || format!("listed dimensions {weyl:?}"))?;
    Ok(format!("{} pairs; {}", pairs.len(), weyl.join(", ")))
}

const CORPUS: [&str; 20] = [
    "whistle(T2)",
    "cowhistle(T2)",
    "bv",
    "cyl_closed",
    "cyl_open(T2,T2)",
    "pants_plug(km)",
    "upsilon(T2,T2,T2)",
    "coupsilon(T3,T3,T3)",
    "whistle(T2); cowhistle(T2)",
    "cowhistle(T2);whistle(T2)",
    "bv; whistle(T2)",
    "bv ; bv ; bv",
    "cyl_closed | bv",
    "(bv | cyl_closed) | whistle(T2)",
    "bv | (cyl_closed | bv)",
    "(whistle(T2); cowhistle(T2)) | cyl_closed",
    "whistle(T2); (cyl_open(T2,T2); cowhistle(T2))",
    "(cyl_closed | cyl_closed); pants_plug(km)",
    "coupsilon(T2,T2,T2); upsilon(T2,T2,T2)",
    "  whistle( U1xU1 ) ;cowhistle(U1xU1)  ",
];

fn words_up_to_three(label: &str) -> Vec<Expr> {
    let gens = [
        format!("whistle({label})"),
        format!("cowhistle({label})"),
        format!("cyl_open({label},{label})"),
        "cyl_closed".to_string(),
        "bv".to_string(),
    ];
    let mut words: Vec<Vec<&str>> = gens.iter().map(|g| vec![g.as_str()]).collect();
    let mut frontier = words.clone();
    for _ in 1..3 {
        let mut next = Vec::new();
        for w in &frontier {
            for g in &gens {
                let mut v = w.clone();
                v.push(g);
                next.push(v);
            }
        }
        words.extend(next.iter().cloned());
        frontier = next;
    }
    words.into_iter().filter_map(|w| parse(&w.join("; ")).ok()).filter(|e| check_signature(e).is_ok()).collect()
}

fn criterion_9(ctx: &Ctx) -> Outcome {
    let pairs = &ctx.pairs;
    for text in CORPUS {
        let e = parse(text).map_err(|e| format!("{text}: {e}"))?;
        let printed = e.to_string();
        let again = parse(&printed).map_err(|e| format!("{printed}: {e}"))?;
        ensure(again == e && again.to_string() == printed, || format!("round trip of `{text}` gives `{printed}`"))?;
    }
    let mut compared = 0;
    for p in pairs {
        let group = p.group().name().to_string();
        let mut ev = Evaluator::new(pairs).with_cap(Some(WORD_CAP));
        for word in words_up_to_three(p.subgroup().name()) {
            let Expr::Seq(parts) = &word else { continue };
            let whole = ev.evaluate(&word, Some(&group)).map_err(|e| format!("{word}: {e}"))?;
            for split in 1..parts.len() {
                let left = if split == 1 { parts[0].clone() } else { Expr::Seq(parts[..split].to_vec()) };
                let right =
                    if parts.len() - split == 1 { parts[split].clone() } else { Expr::Seq(parts[split..].to_vec()) };
                let a = ev.evaluate(&left, Some(&group)).map_err(|e| e.to_string())?;
                let b = ev.evaluate(&right, Some(&group)).map_err(|e| e.to_string())?;
                let composed = a.table.then(&b.table).map_err(|e| e.to_string())?;
                ensure(composed.same_as(&whole.table, false), || {
                    format!("{}: `{word}` differs from `{left}` then `{right}`", p.name())
                })?;
                compared += 1;
            }
        }
        let id = ev.evaluate(&parse("cyl_closed").unwrap(), Some(&group)).map_err(|e| e.to_string())?;
        ensure(id.table.is_identity(), || format!("{group}: cyl_closed is not the identity"))?;
    }
    Ok(format!("{} words round trip, {compared} compositions at cap {WORD_CAP}, identity", CORPUS.len()))
}

fn criterion_10(ctx: &Ctx) -> Outcome {
    let mut rows = Vec::new();
    for (p, w) in ctx.iter() {
        let w = w?;
        let cap = p.default_cap();
        let det_deg = w.det_zeta().homogeneous_degree().ok_or("det ζ is not homogeneous")? as i64;
        let y_deg: i64 = p.x_degrees().iter().map(|&d| d as i64 - 1).sum();
        let fc = w.fundamental_class().map_err(|e| e.to_string())?;
        let lam_deg = fc.jacobian.homogeneous_degree().ok_or("Λ_W is not homogeneous")? as i64;
        let t = w.dmu_whistle_table(cap).map_err(|e| e.to_string())?;
        let s = t.degree_shift().map_err(|(a, b)| format!("{}: Dμ_W shifts {a} and {b}", p.name()))?;
        ensure(s == Some(det_deg - y_deg), || format!("{}: Dμ_W shift {s:?} ≠ {}", p.name(), det_deg - y_deg))?;
        ensure(s == Some(w.dmu_whistle_shift()), || format!("{}: Dμ_W shift {s:?} ≠ −dim H", p.name()))?;
        let t = w.dmu_whistle_op_table(cap).map_err(|e| e.to_string())?;
        let s = t.degree_shift().map_err(|(a, b)| format!("{}: Dμ_W^op shifts {a} and {b}", p.name()))?;
        ensure(s == Some(-lam_deg), || format!("{}: Dμ_W^op shift {s:?} ≠ {}", p.name(), -lam_deg))?;
        rows.push(format!("{} {}/{}", p.name(), det_deg - y_deg, -lam_deg));
    }
    Ok(rows.join(", "))
}

fn main() {
    let total = Instant::now();
    let ctx = Ctx::new(builtin_pairs());
    let criteria: [Criterion; 10] = [
        ("zeta certificate", criterion_1),
        ("whistle dual nonzero", criterion_2),
        ("reverse whistle on the fundamental class", criterion_3),
        ("cylinder with one hole", criterion_4),
        ("reverse composite vanishes", criterion_5),
        ("open string operations", criterion_6),
        ("twisted whistle nonzero", criterion_7),
        ("regularity and dimension counts", criterion_8),
        ("parser and evaluator", criterion_9),
        ("degree shifts", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = f(&ctx);
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail} ({secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {why} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("{} of 10 criteria passed in {:.1}s", 10 - failed, total.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
