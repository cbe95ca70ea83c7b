//! Command-line front end.

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use whistle_core::cobdsl::{parse_program, Evaluator, OperationValue};
use whistle_core::exactalg::{Field, Polynomial};
use whistle_core::liecat::{validate_pair, Outcome, PairDatum, ValidationReport};
use whistle_core::openstr::build_open_models;
use whistle_core::whistle::{build_models, bv_operator, GradedModel, MixedClass, TableStatus};

use crate::catalog::{builtin_pairs, load_catalog, CatalogError};
use crate::spot::spot_checks;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

fn parse_field(s: &str) -> Result<Field, String> {
    if s == "Q" {
        return Ok(Field::Rational);
    }
    let p = s.strip_prefix("Fp:").ok_or_else(|| format!("expected `Q` or `Fp:<p>`, found `{s}`"))?;
    let p: u64 = p.parse().map_err(|_| format!("`{p}` is not an integer"))?;
    Field::prime_allow_two(p).map_err(|e| e.to_string())
}

#[derive(Parser, Debug)]
#[command(
    name = "whistle",
    version,
    about = "Exact dual operations of labeled open-closed cobordisms on classifying spaces"
)]
pub struct Cli {
    /// Catalog file; may be repeated. The builtin catalog is used when omitted.
    #[arg(long = "catalog", global = true, value_name = "PATH")]
    pub catalogs: Vec<PathBuf>,
    /// Degree cap for graded enumerations (default max(2·Σ deg u, Σ (deg x − 1)) per pair).
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(2..))]
    pub cap: Option<u32>,
    /// Ground field `Q` or `Fp:<p>`, overriding the catalog entries.
    #[arg(long, global = true, value_parser = parse_field)]
    pub field: Option<Field>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Treat unsupported results as failures (exit status 4).
    #[arg(long, global = true)]
    pub strict: bool,
    /// Seed of the randomized spot checks run by `validate`.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Ambient group for DSL labels that occur under several groups.
    #[arg(long, global = true)]
    pub group: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the catalog with validation summaries.
    Catalog,
    /// Run every hypothesis check on one pair.
    Validate { pair: String },
    /// Print the loop, whistle and interval models of a pair.
    Model { pair: String },
    /// Apply one operation to a class literal.
    Eval {
        pair: String,
        op: String,
        #[arg(allow_hyphen_values = true)]
        class: String,
    },
    /// Evaluate every word of a DSL file.
    Run { file: PathBuf },
    /// Poincaré series of the fibre `H*(BH)/(ρ(x))`.
    Series { pair: String },
}

/// Settings shared by all commands.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub catalogs: Vec<PathBuf>,
    pub field: Option<Field>,
    pub cap: Option<u32>,
    pub format: Format,
    pub strict: bool,
    pub seed: u64,
    pub group: Option<String>,
}

impl From<&Cli> for RunConfig {
    fn from(c: &Cli) -> Self {
        RunConfig {
            catalogs: c.catalogs.clone(),
            field: c.field,
            cap: c.cap,
            format: c.format,
            strict: c.strict,
            seed: c.seed,
            group: c.group.clone(),
        }
    }
}

pub const OPS: [&str; 7] =
    ["dmu_whistle", "dmu_whistle_op", "composite_W_Wop", "composite_Wop_W", "bv", "dmu_upsilon", "dmu_upsilon_op"];

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error("cannot read {}: {source}", path.display())]
    Read { path: PathBuf, source: io::Error },
    #[error("pair `{name}`: {source}")]
    FieldChange { name: String, source: whistle_core::Error },
    #[error("unknown pair `{0}`")]
    UnknownPair(String),
    #[error("unsupported operation `{0}`; known operations: {ops}", ops = OPS.join(", "))]
    UnknownOp(String),
    #[error("line {line}: {source}")]
    Line { line: usize, source: whistle_core::Error },
    #[error("{0}")]
    Core(#[from] whistle_core::Error),
    #[error("strict mode: {0}")]
    Strict(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

fn core_code(e: &whistle_core::Error) -> i32 {
    use whistle_core::Error as E;
    match e {
        E::Parse { .. } | E::UnknownGenerator(_) | E::UnknownVariable(_) => 3,
        E::Unsupported(_) => 4,
        E::Signature(_) | E::UnknownLabel(_) => 5,
        _ => 1,
    }
}

impl CliError {
    /// 2 load failure, 3 parse error, 4 unsupported, 5 signature or label.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Catalog(_) | CliError::Read { .. } | CliError::FieldChange { .. } => 2,
            CliError::UnknownOp(_) | CliError::Strict(_) => 4,
            CliError::UnknownPair(_) => 5,
            CliError::Line { source, .. } => core_code(source),
            CliError::Core(e) => core_code(e),
            CliError::Io(_) => 1,
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit status.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    let config = RunConfig::from(&cli);
    match execute(&config, &cli.command, out) {
        Ok(()) => 0,
        // a closed pipe (`whistle run … | head`) is not a failure
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn load_pairs(config: &RunConfig) -> Result<Vec<PairDatum>, CliError> {
    let mut pairs = Vec::new();
    if config.catalogs.is_empty() {
        pairs = builtin_pairs();
    }
    for path in &config.catalogs {
        pairs.extend(load_catalog(path)?);
    }
    if let Some(f) = config.field {
        pairs = pairs
            .into_iter()
            .map(|p| p.with_field(f).map_err(|source| CliError::FieldChange { name: p.name().to_string(), source }))
            .collect::<Result<_, _>>()?;
    }
    Ok(pairs)
}

fn find<'a>(pairs: &'a [PairDatum], name: &str) -> Result<&'a PairDatum, CliError> {
    pairs.iter().find(|p| p.name() == name).ok_or_else(|| CliError::UnknownPair(name.to_string()))
}

fn emit(out: &mut dyn Write, value: &serde_json::Value) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, value).map_err(io::Error::from)?;
    writeln!(out)?;
    Ok(())
}

pub fn execute(config: &RunConfig, command: &Command, out: &mut dyn Write) -> Result<(), CliError> {
    let pairs = load_pairs(config)?;
    match command {
        Command::Catalog => cmd_catalog(config, &pairs, out),
        Command::Validate { pair } => cmd_validate(config, find(&pairs, pair)?, out),
        Command::Model { pair } => cmd_model(config, find(&pairs, pair)?, out),
        Command::Eval { pair, op, class } => cmd_eval(config, find(&pairs, pair)?, op, class, out),
        Command::Run { file } => cmd_run(config, &pairs, file, out),
        Command::Series { pair } => cmd_series(config, find(&pairs, pair)?, out),
    }
}

fn cap_for(config: &RunConfig, pair: &PairDatum) -> u32 {
    config.cap.unwrap_or_else(|| pair.default_cap())
}

fn degrees(list: &[u32]) -> String {
    list.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

fn report_json(r: &ValidationReport) -> serde_json::Value {
    json!({
        "pair": r.pair,
        "field": r.field.to_string(),
        "cap": r.cap,
        "status": r.summary(),
        "usable": r.usable(),
        "composite_reliable": r.composite_reliable(),
        "quotient_dim": r.quotient_dim,
        "checks": r.checks.iter().map(|c| json!({
            "name": c.name,
            "outcome": match c.outcome {
                Outcome::Pass => "pass",
                Outcome::Fail => "fail",
                Outcome::Flag => "flag",
            },
            "mandatory": c.mandatory,
            "detail": c.detail,
        })).collect::<Vec<_>>(),
    })
}

pub fn cmd_catalog(config: &RunConfig, pairs: &[PairDatum], out: &mut dyn Write) -> Result<(), CliError> {
    let reports: Vec<ValidationReport> = pairs.iter().map(|p| validate_pair(p, cap_for(config, p))).collect();
    if config.format == Format::Json {
        let rows: Vec<serde_json::Value> = pairs
            .iter()
            .zip(&reports)
            .map(|(p, r)| {
                json!({
                    "name": p.name(),
                    "group": p.group().name(),
                    "subgroup": p.subgroup().name(),
                    "field": p.field().to_string(),
                    "rank": p.rank(),
                    "group_degrees": p.x_degrees(),
                    "subgroup_degrees": p.u_degrees(),
                    "status": r.summary(),
                    "usable": r.usable(),
                    "composite_reliable": r.composite_reliable(),
                    "quotient_dim": r.quotient_dim,
                })
            })
            .collect();
        return emit(out, &json!({ "pairs": rows }));
    }
    writeln!(out, "{:<14} {:<6} {:<8} {:<5} {:<18} STATUS", "NAME", "GROUP", "SUBGROUP", "RANK", "DEGREES")?;
    for (p, r) in pairs.iter().zip(&reports) {
        let d = format!("{} -> {}", degrees(&p.x_degrees()), degrees(&p.u_degrees()));
        writeln!(
            out,
            "{:<14} {:<6} {:<8} {:<5} {:<18} {}",
            p.name(),
            p.group().name(),
            p.subgroup().name(),
            p.rank(),
            d,
            r.summary()
        )?;
    }
    Ok(())
}

pub fn cmd_validate(config: &RunConfig, pair: &PairDatum, out: &mut dyn Write) -> Result<(), CliError> {
    let cap = cap_for(config, pair);
    let mut report = validate_pair(pair, cap);
    report.checks.extend(spot_checks(pair, cap, config.seed, report.usable()));
    if config.format == Format::Json {
        let mut v = report_json(&report);
        v["seed"] = json!(config.seed);
        return emit(out, &v);
    }
    write!(out, "{report}")?;
    Ok(())
}

fn poly_list(ps: &[Polynomial]) -> Vec<String> {
    ps.iter().map(Polynomial::to_string).collect()
}

fn generators_text(model: &GradedModel) -> String {
    let even = model.ring().vars().iter().map(|v| format!("{}:{}", v.name, v.degree));
    let odd = model.odd().iter().map(|v| format!("{}:{}", v.name, v.degree));
    even.chain(odd).collect::<Vec<_>>().join(" ")
}

pub fn cmd_model(config: &RunConfig, pair: &PairDatum, out: &mut dyn Write) -> Result<(), CliError> {
    let cap = cap_for(config, pair);
    let w = build_models(pair, cap)?;
    let lp = w.loop_model();
    let iv = w.interval();
    let basis: Vec<String> = w
        .restriction_quotient()
        .full_basis()
        .map(|b| {
            b.iter().map(|m| Polynomial::monomial(pair.u_ring(), m.clone(), pair.field().one()).to_string()).collect()
        })
        .unwrap_or_default();
    let zeta = &w.zeta().entries;
    let zeta_rows: Vec<Vec<String>> =
        (0..zeta.rows()).map(|i| (0..zeta.cols()).map(|j| zeta.get(i, j).to_string()).collect()).collect();
    let det = iv.format(&iv.even_class(w.det_zeta().clone()));
    let fc = w.fundamental_class().ok();
    let rho: Vec<String> =
        pair.group().generators().iter().zip(pair.restriction()).map(|((x, _), p)| format!("{x} ↦ {p}")).collect();
    if config.format == Format::Json {
        return emit(
            out,
            &json!({
                "pair": pair.name(),
                "field": pair.field().to_string(),
                "restriction": rho,
                "loop": { "generators": generators_text(lp) },
                "whistle": { "generators": generators_text(w.whistle_model()) },
                "interval": {
                    "generators": generators_text(iv),
                    "groebner_basis": poly_list(iv.even().groebner_basis()),
                },
                "fibre_basis": basis,
                "zeta": zeta_rows,
                "det_zeta": det,
                "jacobian": fc.map(|f| f.jacobian.to_string()),
                "lambda": fc.map(|f| f.lambda.to_string()),
                "b_top": fc.map(|f| Polynomial::monomial(pair.u_ring(), f.b_top.clone(), pair.field().one()).to_string()),
            }),
        );
    }
    writeln!(out, "pair {}: {} ⊃ {} over {}", pair.name(), pair.group().name(), pair.subgroup().name(), pair.field())?;
    writeln!(out, "restriction: {}", rho.join(", "))?;
    writeln!(out, "loop model: {}", generators_text(lp))?;
    writeln!(out, "whistle model: {}", generators_text(w.whistle_model()))?;
    writeln!(out, "interval model: {}", generators_text(iv))?;
    writeln!(out, "  relations: {}", poly_list(iv.even().groebner_basis()).join(", "))?;
    writeln!(out, "fibre basis: {} (dimension {})", basis.join(", "), basis.len())?;
    for (i, row) in zeta_rows.iter().enumerate() {
        writeln!(out, "zeta row {}: [{}]", i + 1, row.join(", "))?;
    }
    writeln!(out, "det zeta: {det}")?;
    match w.fundamental_class() {
        Ok(f) => writeln!(
            out,
            "jacobian: {} = {} * {} in the fibre",
            f.jacobian,
            f.lambda,
            Polynomial::monomial(pair.u_ring(), f.b_top.clone(), pair.field().one())
        )?,
        Err(e) => writeln!(out, "jacobian: {e}")?,
    }
    Ok(())
}

struct EvalResult {
    input: String,
    output: String,
    degree_shift: Option<i64>,
    up_to_scalar: bool,
}

fn shift_of(model: &GradedModel, input: &MixedClass, output: &MixedClass, nominal: i64) -> Option<i64> {
    if output.is_zero() && input.homogeneous_degree(model).is_none() {
        return None;
    }
    Some(nominal)
}

pub fn evaluate_op(
    pair: &PairDatum,
    op: &str,
    class: &str,
    cap: u32,
) -> Result<(String, String, Option<i64>, bool), CliError> {
    let r = eval_inner(pair, op, class, cap)?;
    Ok((r.input, r.output, r.degree_shift, r.up_to_scalar))
}

fn eval_inner(pair: &PairDatum, op: &str, class: &str, cap: u32) -> Result<EvalResult, CliError> {
    let closed =
        |input: &Arc<GradedModel>, output: &Arc<GradedModel>, c: &MixedClass, v: MixedClass, shift: i64| EvalResult {
            input: input.format(c),
            output: output.format(&v),
            degree_shift: shift_of(input, c, &v, shift),
            up_to_scalar: true,
        };
    match op {
        "dmu_whistle" | "dmu_whistle_op" | "composite_W_Wop" | "composite_Wop_W" | "bv" => {
            let w = build_models(pair, cap)?;
            let (lp, iv) = (w.loop_model(), w.interval());
            Ok(match op {
                "dmu_whistle" => {
                    let c = lp.parse(class)?;
                    closed(lp, iv, &c, w.dmu_whistle(&c)?, w.dmu_whistle_shift())
                }
                "dmu_whistle_op" => {
                    let c = iv.parse(class)?;
                    closed(iv, lp, &c, w.dmu_whistle_op(&c)?, w.dmu_whistle_op_shift())
                }
                "composite_W_Wop" => {
                    w.check_composite_condition()?;
                    let c = lp.parse(class)?;
                    let v = w.dmu_whistle_op(&w.dmu_whistle(&c)?)?;
                    closed(lp, lp, &c, v, w.dmu_whistle_shift() + w.dmu_whistle_op_shift())
                }
                "composite_Wop_W" => {
                    let c = iv.parse(class)?;
                    let v = w.dmu_whistle(&w.dmu_whistle_op(&c)?)?;
                    closed(iv, iv, &c, v, w.dmu_whistle_shift() + w.dmu_whistle_op_shift())
                }
                _ => {
                    let c = lp.parse(class)?;
                    closed(lp, lp, &c, bv_operator(lp, &c), -1)
                }
            })
        }
        "dmu_upsilon" => {
            let m = build_open_models(pair, pair, pair, cap)?;
            let c = m.open_interval().parse(class)?;
            let v = m.dmu_upsilon(&c)?;
            Ok(EvalResult {
                input: m.open_interval().format(&c),
                output: m.double().format(&v),
                degree_shift: None,
                up_to_scalar: false,
            })
        }
        "dmu_upsilon_op" => {
            let m = build_open_models(pair, pair, pair, cap)?;
            let c = m.double().parse(class)?;
            let v = m.dmu_upsilon_op(&c)?;
            Ok(closed(m.double(), m.open_interval(), &c, v, m.dmu_upsilon_op_shift()))
        }
        _ => Err(CliError::UnknownOp(op.to_string())),
    }
}

pub fn cmd_eval(
    config: &RunConfig,
    pair: &PairDatum,
    op: &str,
    class: &str,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let r = eval_inner(pair, op, class, cap_for(config, pair))?;
    if config.format == Format::Json {
        return emit(
            out,
            &json!({
                "input": r.input,
                "op": op,
                "output": r.output,
                "degree_shift": r.degree_shift,
                "up_to_scalar": r.up_to_scalar,
            }),
        );
    }
    writeln!(out, "{}", r.output)?;
    Ok(())
}

fn status_of(v: &OperationValue) -> (&'static str, Option<String>) {
    match &v.table.status {
        TableStatus::Unsupported(r) => ("unsupported", Some(r.clone())),
        TableStatus::Zero(r) => ("zero", Some(r.clone())),
        TableStatus::Computed if v.is_zero() => ("zero", None),
        TableStatus::Computed => ("computed", None),
    }
}

fn value_json(line: usize, v: &OperationValue) -> serde_json::Value {
    let t = &v.table;
    let (status, reason) = status_of(v);
    let entries: Vec<serde_json::Value> = t
        .nonzero_entries()
        .map(|(m, mask, img)| json!({ "input": t.describe_entry(m, *mask), "output": t.codomain.format(img) }))
        .collect();
    json!({
        "line": line,
        "expr": v.expr.to_string(),
        "group": v.group,
        "input": v.input.to_string(),
        "output": v.output.to_string(),
        "cap": t.cap,
        "status": status,
        "reason": reason,
        "up_to_scalar": v.up_to_scalar(),
        "degree_shift": t.degree_shift().ok().flatten(),
        "basis_size": t.entries.len(),
        "entries": entries,
        "notes": t.notes,
    })
}

fn value_text(out: &mut dyn Write, line: usize, v: &OperationValue) -> io::Result<()> {
    let t = &v.table;
    writeln!(
        out,
        "[line {line}] {}  (group {}, signature {} → {}, cap {})",
        v.expr, v.group, v.input, v.output, t.cap
    )?;
    match status_of(v) {
        ("unsupported", Some(r)) => writeln!(out, "  unsupported: {r}")?,
        ("zero", reason) => {
            write!(out, "  zero table through degree {}", t.cap)?;
            match reason {
                Some(r) => writeln!(out, " ({r})")?,
                None => writeln!(out)?,
            }
        }
        _ => {
            let mut zeros = 0;
            for (m, mask, img) in &t.entries {
                if img.is_zero() {
                    zeros += 1;
                } else {
                    writeln!(out, "  {} → {}", t.describe_entry(m, *mask), t.codomain.format(img))?;
                }
            }
            if zeros > 0 {
                writeln!(out, "  ({zeros} other basis elements map to 0)")?;
            }
            if v.up_to_scalar() {
                writeln!(out, "  (values up to a nonzero scalar)")?;
            }
        }
    }
    for n in &t.notes {
        writeln!(out, "  note: {n}")?;
    }
    Ok(())
}

pub fn cmd_run(config: &RunConfig, pairs: &[PairDatum], file: &PathBuf, out: &mut dyn Write) -> Result<(), CliError> {
    let text = std::fs::read_to_string(file).map_err(|source| CliError::Read { path: file.clone(), source })?;
    let program = parse_program(&text)?;
    let mut ev = Evaluator::new(pairs).with_cap(config.cap);
    let mut results = Vec::new();
    for st in &program.statements {
        let directive = st.group.as_deref().or(config.group.as_deref());
        let v = ev.evaluate(&st.expr, directive).map_err(|source| CliError::Line { line: st.line, source })?;
        results.push((st.line, v));
    }
    if config.format == Format::Json {
        let rs: Vec<serde_json::Value> = results.iter().map(|(l, v)| value_json(*l, v)).collect();
        emit(out, &json!({ "file": file.display().to_string(), "results": rs }))?;
    } else {
        for (l, v) in &results {
            value_text(out, *l, v)?;
        }
    }
    if config.strict {
        if let Some((l, v)) = results.iter().find(|(_, v)| v.is_unsupported()) {
            let reason = status_of(v).1.unwrap_or_default();
            return Err(CliError::Strict(format!("line {l}: {reason}")));
        }
    }
    Ok(())
}

pub fn cmd_series(config: &RunConfig, pair: &PairDatum, out: &mut dyn Write) -> Result<(), CliError> {
    let cap = cap_for(config, pair);
    let s = pair.poincare_series();
    let total = s.total();
    let coefficients = s.as_polynomial().unwrap_or_else(|| s.expand(cap));
    if config.format == Format::Json {
        return emit(
            out,
            &json!({
                "pair": pair.name(),
                "closed_form": s.to_string(),
                "coefficients": coefficients.iter().map(|&c| c as i64).collect::<Vec<_>>(),
                "total": total.map(|t| t as i64),
            }),
        );
    }
    writeln!(out, "{}: {}", pair.name(), s)?;
    match total {
        Some(t) => writeln!(out, "{} (total {t})", s.coefficient_string(cap))?,
        None => writeln!(out, "{} (infinite)", s.coefficient_string(cap))?,
    }
    Ok(())
}
