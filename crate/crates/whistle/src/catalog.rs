//! Catalog files: JSON lists of group/subgroup pairs.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use whistle_core::exactalg::Field;
use whistle_core::liecat::{GroupPresentation, PairDatum};

#[derive(Debug, thiserror::Error)]
pub enum CatalogError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{origin}:{line}:{column}: {message}")]
    Syntax { origin: String, line: usize, column: usize, message: String },
    #[error("{origin}:{line}: pairs[{index}] `{name}`, {field}: {message}")]
    Pair { origin: String, line: usize, index: usize, name: String, field: String, message: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogFile {
    pub pairs: Vec<PairEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairEntry {
    pub name: String,
    #[serde(default)]
    pub field: FieldSpec,
    pub group: GroupEntry,
    pub subgroup: GroupEntry,
    pub restriction: BTreeMap<String, String>,
    #[serde(default)]
    pub torsion_free_asserted: bool,
}

/// `"Q"` or `{"Fp": p}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldSpec {
    Named(String),
    Prime {
        #[serde(rename = "Fp")]
        fp: u64,
    },
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec::Named("Q".into())
    }
}

impl FieldSpec {
    pub fn field(&self) -> Result<Field, String> {
        match self {
            FieldSpec::Named(s) if s == "Q" => Ok(Field::Rational),
            FieldSpec::Named(s) => match s.strip_prefix("Fp:").map(str::parse::<u64>) {
                Some(Ok(p)) => Field::prime_allow_two(p).map_err(|e| e.to_string()),
                _ => Err(format!("unknown field `{s}`; expected \"Q\", \"Fp:p\" or {{\"Fp\": p}}")),
            },
            FieldSpec::Prime { fp } => Field::prime_allow_two(*fp).map_err(|e| e.to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupEntry {
    pub name: String,
    pub generators: Vec<GeneratorEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weyl_order: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorEntry {
    pub name: String,
    pub degree: u32,
}

impl GroupEntry {
    fn presentation(&self) -> whistle_core::Result<GroupPresentation> {
        GroupPresentation::new(
            self.name.clone(),
            self.generators.iter().map(|g| (g.name.clone(), g.degree)).collect(),
            self.weyl_order,
        )
    }
}

impl PairEntry {
    /// Builds the datum; errors carry the offending field.
    pub fn to_pair(&self) -> Result<PairDatum, (String, String)> {
        let field = self.field.field().map_err(|m| ("field".to_string(), m))?;
        let group = self.group.presentation().map_err(|e| ("group".to_string(), e.to_string()))?;
        let subgroup = self.subgroup.presentation().map_err(|e| ("subgroup".to_string(), e.to_string()))?;
        let rho = self.restriction.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
        PairDatum::new(self.name.clone(), field, group, subgroup, rho, self.torsion_free_asserted)
            .map_err(|e| ("restriction".to_string(), e.to_string()))
    }
}

fn line_of(text: &str, needle: &str) -> usize {
    text.find(needle).map_or(1, |i| text[..i].matches('\n').count() + 1)
}

/// Parses catalog text; `origin` names the source in diagnostics. Blank
/// text is an empty catalog.
pub fn parse_catalog(text: &str, origin: &str) -> Result<Vec<PairDatum>, CatalogError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    let file: CatalogFile = serde_json::from_str(text).map_err(|e| CatalogError::Syntax {
        origin: origin.to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let mut out = Vec::with_capacity(file.pairs.len());
    for (index, entry) in file.pairs.iter().enumerate() {
        let pair = entry.to_pair().map_err(|(field, message)| CatalogError::Pair {
            origin: origin.to_string(),
            line: line_of(text, &format!("\"{}\"", entry.name)),
            index,
            name: entry.name.clone(),
            field,
            message,
        })?;
        out.push(pair);
    }
    Ok(out)
}

pub fn load_catalog(path: &Path) -> Result<Vec<PairDatum>, CatalogError> {
    let text = std::fs::read_to_string(path).map_err(|source| CatalogError::Io { path: path.to_path_buf(), source })?;
    parse_catalog(&text, &path.display().to_string())
}

const BUILTIN: &str = include_str!("../data/builtin_catalog.json");

/// The shipped pairs: `U(n) ⊃ Tⁿ` and `U(n) ⊃ U(k)×U(n−k)` for `n ≤ 4`,
/// `Sp(n) ⊃ Tⁿ` for `n ≤ 2`, `SO(2n+1) ⊃ SO(2n)` for `n ≤ 2`, and `G ⊃ G`
/// for each of these groups.
pub fn builtin_pairs() -> Vec<PairDatum> {
    parse_catalog(BUILTIN, "builtin").expect("builtin catalog is well formed")
}

pub fn builtin_catalog_text() -> &'static str {
    BUILTIN
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_catalog_loads() {
        let pairs = builtin_pairs();
        assert_eq!(pairs.len(), 18);
        let t2 = pairs.iter().find(|p| p.name() == "U2_T2").unwrap();
        let rho: Vec<String> = t2.restriction().iter().map(|p| p.to_string()).collect();
        assert_eq!(rho, ["u1 + u2", "u1*u2"]);
        assert!(pairs.iter().any(|p| p.name() == "G_eq_H(U2)" && p.is_trivial()));
    }

    #[test]
    fn diagnostics() {
        assert!(parse_catalog("", "empty").unwrap().is_empty());
        assert!(parse_catalog("{\"pairs\": []}", "empty").unwrap().is_empty());
        let odd = r#"{"pairs": [{"name": "bad", "field": "Q",
            "group": {"name": "G", "generators": [{"name": "x1", "degree": 3}]},
            "subgroup": {"name": "H", "generators": [{"name": "u1", "degree": 2}]},
            "restriction": {"x1": "u1"}, "torsion_free_asserted": true}]}"#;
        let e = parse_catalog(odd, "odd.json").unwrap_err().to_string();
        assert!(e.contains("x1") && e.contains("group") && e.starts_with("odd.json:1:"), "{e}");
        let syntax = parse_catalog("{\"pairs\": [\n  {\"nme\": 1}]}", "s.json").unwrap_err();
        assert!(matches!(syntax, CatalogError::Syntax { line: 2, .. }), "{syntax}");
        let fp = r#"{"pairs": [{"name": "p", "field": {"Fp": 5},
            "group": {"name": "G", "generators": [{"name": "x", "degree": 2}]},
            "subgroup": {"name": "H", "generators": [{"name": "u", "degree": 2}]},
            "restriction": {"x": "u"}}]}"#;
        assert_eq!(parse_catalog(fp, "fp").unwrap()[0].field(), Field::Prime(5));
    }
}
