//! Serialisable covering declarations: JSON files naming the source and
//! target builders, the index coalgebra, and the value table as rendered
//! strings.  Exporting a covering and importing the file reproduces the
//! same values, and re-exporting reproduces the same bytes.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::basis::{BasisKey, PowerLetter};
use crate::covering::{FactorFn, GeneratorsFn, PartialCovering, RuleFn};
use crate::element::Element;
use crate::error::{AlgebraError, Result};
use crate::handle::BialgebraHandle;
use crate::instances::{build_divided_power_coalgebra, build_pointed_coalgebra};
use crate::registry::{build_bialgebra, RunParams, BIALGEBRA_NAMES};
use crate::text::{parse_element, parse_key, render_element, render_key};

/// Format version stamped into every declaration file.
pub const DECL_SCHEMA_VERSION: u32 = 1;

/// The index coalgebra of a declared covering.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IndexDecl {
    /// The coalgebra underlying the target bialgebra.
    Target,
    /// The coalgebra underlying the source bialgebra.
    Source,
    /// The divided-power coalgebra.
    DividedPowers,
    /// A pointed coalgebra on the named grouplike points.
    Points(Vec<String>),
}

/// How the declared entries define the map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DeclMode {
    /// Entries cover generator pairs; other values follow multiplicatively.
    Generators,
    /// Entries cover every pair within the degree window.
    Table,
}

/// One table entry `(b, c) ↦ value`, all three rendered as text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeclEntry {
    pub b: String,
    pub c: String,
    pub value: String,
}

/// A complete covering declaration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoveringDecl {
    pub schema_version: u32,
    pub name: String,
    /// Builder name of the source bialgebra.
    pub source: String,
    /// Builder name of the target bialgebra.
    pub target: String,
    pub index: IndexDecl,
    /// Degree window the entries are tabulated through.
    pub degree: u32,
    /// Alphabet size for set-word builders.
    pub alphabet: u32,
    /// Exponent window for Laurent-type builders.
    pub window: i64,
    pub mode: DeclMode,
    /// Whether each fixed index key kills all source keys of large degree,
    /// by the shape of the defining rule.
    pub locally_finite: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<String>>,
    pub entries: Vec<DeclEntry>,
}

/// Maps a handle onto its builder name, recovering size parameters from
/// parametrised names.
fn builder_name(h: &BialgebraHandle) -> Result<(String, Option<u32>, Option<i64>)> {
    let name = h.name();
    if BIALGEBRA_NAMES.contains(&name) {
        return Ok((name.to_string(), None, None));
    }
    if let Some(m) = name
        .strip_prefix("omp(")
        .and_then(|s| s.strip_suffix(')'))
        .and_then(|s| s.parse::<u32>().ok())
    {
        return Ok(("omp".into(), Some(m), None));
    }
    if let Some(w) = name
        .strip_prefix("laurent(window ")
        .and_then(|s| s.strip_suffix(')'))
        .and_then(|s| s.parse::<i64>().ok())
    {
        return Ok(("laurent".into(), None, Some(w)));
    }
    Err(AlgebraError::Unsupported(format!(
        "`{name}` is not a named builder, so the covering cannot be declared"
    )))
}

/// Classifies the index coalgebra against the declarable shapes.
fn index_decl(f: &PartialCovering) -> Result<IndexDecl> {
    let c = f.c();
    // Underlying coalgebras travel both plain and under the `coalg(...)`
    // rename that `as_coalgebra` applies.
    let matches = |h: &BialgebraHandle| {
        c.name() == h.name() || c.name() == format!("coalg({})", h.name())
    };
    if matches(f.a()) {
        return Ok(IndexDecl::Target);
    }
    if matches(f.b()) {
        return Ok(IndexDecl::Source);
    }
    if c.name() == "divided-powers" {
        return Ok(IndexDecl::DividedPowers);
    }
    let keys = c.keys_to_degree(0);
    let mut points = Vec::new();
    for k in &keys {
        match k {
            BasisKey::Point(label) => points.push(label.clone()),
            _ => {
                return Err(AlgebraError::Unsupported(format!(
                    "the index coalgebra `{}` cannot be declared",
                    c.name()
                )))
            }
        }
    }
    if points.is_empty() {
        return Err(AlgebraError::Unsupported(format!(
            "the index coalgebra `{}` cannot be declared",
            c.name()
        )));
    }
    Ok(IndexDecl::Points(points))
}

/// Serialises a covering into a declaration, tabulating values through
/// `degree` (clipped to the covering's own bound).
pub fn export_covering(f: &PartialCovering, degree: u32) -> Result<CoveringDecl> {
    let (source, a1, w1) = builder_name(f.b())?;
    let (target, a2, w2) = builder_name(f.a())?;
    let alphabet = match (a1, a2) {
        (Some(x), Some(y)) if x != y => {
            return Err(AlgebraError::Unsupported(
                "source and target disagree on the alphabet size".into(),
            ))
        }
        (x, y) => x.or(y).unwrap_or(RunParams::default().alphabet),
    };
    let window = match (w1, w2) {
        (Some(x), Some(y)) if x != y => {
            return Err(AlgebraError::Unsupported(
                "source and target disagree on the exponent window".into(),
            ))
        }
        (x, y) => x.or(y).unwrap_or(RunParams::default().window),
    };
    let index = index_decl(f)?;
    let degree = degree.min(f.degree_bound());
    let c_keys = f.c().keys_to_degree(degree);
    let mut entries = Vec::new();
    let (mode, generators) = if let Some(gens) = f.generator_keys(degree) {
        for g in &gens {
            for ck in &c_keys {
                entries.push(DeclEntry {
                    b: render_key(g),
                    c: render_key(ck),
                    value: render_element(&f.value(g, ck)?),
                });
            }
        }
        (
            DeclMode::Generators,
            Some(gens.iter().map(render_key).collect()),
        )
    } else if let Some(table) = f.table_entries() {
        for ((b, c), v) in table {
            entries.push(DeclEntry {
                b: render_key(b),
                c: render_key(c),
                value: render_element(v),
            });
        }
        (DeclMode::Table, None)
    } else {
        // Materialise through a map so the entry order matches what a
        // re-export of the imported table produces.
        let mut table = BTreeMap::new();
        for b in f.b().keys_to_degree(degree) {
            for ck in &c_keys {
                table.insert((b.clone(), ck.clone()), f.value(&b, ck)?);
            }
        }
        for ((b, c), v) in &table {
            entries.push(DeclEntry {
                b: render_key(b),
                c: render_key(c),
                value: render_element(v),
            });
        }
        (DeclMode::Table, None)
    };
    Ok(CoveringDecl {
        schema_version: DECL_SCHEMA_VERSION,
        name: f.name().to_string(),
        source,
        target,
        index,
        degree,
        alphabet,
        window,
        mode,
        locally_finite: f.locally_finite_structural(),
        generators,
        entries,
    })
}

/// The factorisation of source keys into generator steps, for the builders
/// that are free on declared generators.
fn source_factor(name: &str) -> Option<FactorFn> {
    match name {
        "nsym" => Some(crate::registry::composition_factor()),
        "omp" => Some(super::canonical::set_word_factor()),
        "kx" => Some(crate::registry::power_factor(PowerLetter::X, false)),
        "kz" => Some(crate::registry::power_factor(PowerLetter::Z, false)),
        "laurent" => Some(crate::registry::power_factor(PowerLetter::Z, true)),
        _ => None,
    }
}

/// Rebuilds the declared covering; values replay from the entry table.
pub fn import_covering(decl: &CoveringDecl) -> Result<PartialCovering> {
    if decl.schema_version != DECL_SCHEMA_VERSION {
        return Err(AlgebraError::Unsupported(format!(
            "declaration schema {} is not readable here (expected {})",
            decl.schema_version, DECL_SCHEMA_VERSION
        )));
    }
    let params = RunParams {
        degree: decl.degree,
        alphabet: decl.alphabet,
        window: decl.window,
    };
    let b = build_bialgebra(&decl.source, &params)?;
    let a = build_bialgebra(&decl.target, &params)?;
    let c = match &decl.index {
        IndexDecl::Target => a.as_coalgebra(),
        IndexDecl::Source => b.as_coalgebra(),
        IndexDecl::DividedPowers => build_divided_power_coalgebra(),
        IndexDecl::Points(labels) => {
            let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
            build_pointed_coalgebra(format!("points({})", decl.name), &refs)?
        }
    };
    let mut table: BTreeMap<(BasisKey, BasisKey), Element> = BTreeMap::new();
    for e in &decl.entries {
        table.insert((parse_key(&e.b)?, parse_key(&e.c)?), parse_element(&e.value)?);
    }
    match decl.mode {
        DeclMode::Table => Ok(PartialCovering::from_table(
            decl.name.clone(),
            b,
            a,
            c,
            decl.degree,
            table,
        )),
        DeclMode::Generators => {
            let declared: Vec<BasisKey> = decl
                .generators
                .as_ref()
                .ok_or_else(|| {
                    AlgebraError::MissingEntry(
                        "generator-mode declaration without a generator list".into(),
                    )
                })?
                .iter()
                .map(|s| parse_key(s))
                .collect::<Result<_>>()?;
            let factor = source_factor(&decl.source).ok_or_else(|| {
                AlgebraError::Unsupported(format!(
                    "no generator factorisation is known for source `{}`; \
                     declare the covering as a full table",
                    decl.source
                ))
            })?;
            let degree_of = b.coalgebra_handle().clone();
            let generators: GeneratorsFn = Arc::new(move |bound| {
                declared
                    .iter()
                    .filter(|k| degree_of.degree(k).is_some_and(|d| d <= bound))
                    .cloned()
                    .collect()
            });
            let name = decl.name.clone();
            let rule: RuleFn = Arc::new(move |g, ck| {
                table.get(&(g.clone(), ck.clone())).cloned().ok_or_else(|| {
                    AlgebraError::MissingEntry(format!(
                        "no declared value for ({}, {}) in {}",
                        render_key(g),
                        render_key(ck),
                        name
                    ))
                })
            });
            Ok(PartialCovering::decree(
                decl.name.clone(),
                b,
                a,
                c,
                decl.degree,
                generators,
                factor,
                rule,
                decl.locally_finite,
            ))
        }
    }
}

/// Pretty-prints a declaration; the bytes are stable across runs.
pub fn decl_to_json(decl: &CoveringDecl) -> String {
    serde_json::to_string_pretty(decl).expect("serializable")
}

/// Parses a declaration from JSON text.
pub fn decl_from_json(src: &str) -> Result<CoveringDecl> {
    serde_json::from_str(src)
        .map_err(|e| AlgebraError::Parse(format!("covering declaration: {e}")))
}
