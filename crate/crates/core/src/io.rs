//! JSON file formats. Every document carries `"schema_version": 1` and a
//! `"kind"` tag. Rationals are written as `"p/q"` strings; irrational
//! tableau entries as `"r+s*sqrt(d)"`. Output is deterministic: entries
//! follow the canonical tree order and polynomial terms follow monomial
//! order.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields::{PolyMap, PolyVectorField, RationalPoint};
use crate::poly::{Monomial, Poly};
use crate::rational::{JsonQ, Surd};
use crate::series::{ButcherTableau, Flavor, SeriesMap};
use crate::trees::Tree;

pub const SCHEMA_VERSION: u32 = 1;

/// A value with a JSON file representation.
pub trait Document: Sized {
    const KIND: &'static str;

    fn to_value(&self) -> serde_json::Value;

    fn from_value(value: serde_json::Value) -> Result<Self>;

    fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("serializable");
        s.push('\n');
        s
    }

    fn from_json(text: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text)?;
        check_header(&value, Self::KIND)?;
        Self::from_value(value)
    }

    fn read(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }
}

fn check_header(value: &serde_json::Value, kind: &str) -> Result<()> {
    let version = value.get("schema_version").and_then(|v| v.as_u64());
    if version != Some(SCHEMA_VERSION as u64) {
        return Err(Error::Format(format!("expected schema_version {SCHEMA_VERSION}, found {version:?}")));
    }
    match value.get("kind").and_then(|v| v.as_str()) {
        Some(k) if k == kind => Ok(()),
        other => Err(Error::Format(format!("expected kind {kind:?}, found {other:?}"))),
    }
}

fn to_value<T: Serialize>(t: &T) -> serde_json::Value {
    serde_json::to_value(t).expect("serializable")
}

fn from_value<T: for<'de> Deserialize<'de>>(v: serde_json::Value) -> Result<T> {
    Ok(serde_json::from_value(v)?)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SeriesFile {
    schema_version: u32,
    kind: String,
    colors: u32,
    order: usize,
    #[serde(default = "default_flavor")]
    flavor: String,
    #[serde(default)]
    coefficients: Vec<SeriesEntry>,
}

fn default_flavor() -> String {
    Flavor::IntegratorMap.as_str().to_string()
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SeriesEntry {
    tree: String,
    value: JsonQ,
}

/// Trees missing from `coefficients` have coefficient zero; all trees are
/// written out.
impl Document for SeriesMap {
    const KIND: &'static str = "series";

    fn to_value(&self) -> serde_json::Value {
        to_value(&SeriesFile {
            schema_version: SCHEMA_VERSION,
            kind: Self::KIND.into(),
            colors: self.colors(),
            order: self.order(),
            flavor: self.flavor().as_str().into(),
            coefficients: self
                .iter()
                .map(|(t, c)| SeriesEntry { tree: t.notation(self.colors() > 1), value: JsonQ(c.clone()) })
                .collect(),
        })
    }

    fn from_value(value: serde_json::Value) -> Result<Self> {
        let file: SeriesFile = from_value(value)?;
        let mut s = SeriesMap::zero(file.colors, file.order, Flavor::parse(&file.flavor)?)?;
        let mut seen = std::collections::BTreeSet::new();
        for e in file.coefficients {
            let tree: Tree = e.tree.parse()?;
            if !seen.insert(tree.clone()) {
                return Err(Error::Format(format!("tree {tree} listed twice")));
            }
            s.set(&tree, e.value.0)?;
        }
        Ok(s)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TableauFile {
    schema_version: u32,
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    radicand: Option<u32>,
    a: Vec<Vec<String>>,
    b: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    c: Option<Vec<String>>,
}

fn parse_surd(text: &str, radicand: Option<u32>) -> Result<Surd> {
    let (value, mentioned) = Surd::parse(text)?;
    match (mentioned, radicand) {
        (Some(m), Some(r)) if m != r => Err(Error::InvalidTableau(format!("entry {text:?} uses sqrt({m}), tableau radicand is {r}"))),
        (Some(m), None) => Err(Error::InvalidTableau(format!("entry {text:?} uses sqrt({m}) but no radicand is declared"))),
        _ => Ok(value),
    }
}

pub(crate) fn tableau_body(t: &ButcherTableau) -> serde_json::Value {
    let d = t.radicand().unwrap_or(1);
    let fmt_row = |row: &[Surd]| row.iter().map(|x| x.format(d)).collect::<Vec<_>>();
    to_value(&TableauFile {
        schema_version: SCHEMA_VERSION,
        kind: ButcherTableau::KIND.into(),
        radicand: t.radicand(),
        a: t.a().iter().map(|r| fmt_row(r)).collect(),
        b: fmt_row(t.b()),
        c: Some(fmt_row(t.c())),
    })
}

pub(crate) fn tableau_from_body(value: serde_json::Value) -> Result<ButcherTableau> {
    let file: TableauFile = from_value(value)?;
    let r = file.radicand;
    let row = |v: &[String]| v.iter().map(|x| parse_surd(x, r)).collect::<Result<Vec<_>>>();
    let a = file.a.iter().map(|x| row(x)).collect::<Result<Vec<_>>>()?;
    let b = row(&file.b)?;
    let c = file.c.as_deref().map(row).transpose()?;
    ButcherTableau::with_radicand(r, a, b, c)
}

impl Document for ButcherTableau {
    const KIND: &'static str = "tableau";

    fn to_value(&self) -> serde_json::Value {
        tableau_body(self)
    }

    fn from_value(value: serde_json::Value) -> Result<Self> {
        tableau_from_body(value)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermFile {
    exponents: Vec<u32>,
    coeff: JsonQ,
}

fn poly_terms(p: &Poly, dim: usize) -> Vec<TermFile> {
    p.terms().map(|(m, c)| TermFile { exponents: m.padded(dim), coeff: JsonQ(c.clone()) }).collect()
}

fn poly_from_terms(terms: Vec<TermFile>, dim: usize) -> Result<Poly> {
    let mut p = Poly::zero();
    for t in terms {
        if t.exponents.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, actual: t.exponents.len() });
        }
        p.add_term(Monomial::new(t.exponents), t.coeff.0);
    }
    Ok(p)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FieldFile {
    schema_version: u32,
    kind: String,
    dim: usize,
    components: Vec<Vec<TermFile>>,
}

impl Document for PolyVectorField {
    const KIND: &'static str = "vector-field";

    fn to_value(&self) -> serde_json::Value {
        let dim = self.dim();
        to_value(&FieldFile {
            schema_version: SCHEMA_VERSION,
            kind: Self::KIND.into(),
            dim,
            components: self.components().iter().map(|p| poly_terms(p, dim)).collect(),
        })
    }

    fn from_value(value: serde_json::Value) -> Result<Self> {
        let file: FieldFile = from_value(value)?;
        let comps = file.components.into_iter().map(|c| poly_from_terms(c, file.dim)).collect::<Result<Vec<_>>>()?;
        PolyVectorField::new(file.dim, comps)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MapFile {
    schema_version: u32,
    kind: String,
    input_dim: usize,
    components: Vec<Vec<TermFile>>,
}

impl Document for PolyMap {
    const KIND: &'static str = "map";

    fn to_value(&self) -> serde_json::Value {
        let dim = self.input_dim();
        to_value(&MapFile {
            schema_version: SCHEMA_VERSION,
            kind: Self::KIND.into(),
            input_dim: dim,
            components: self.components().iter().map(|p| poly_terms(p, dim)).collect(),
        })
    }

    fn from_value(value: serde_json::Value) -> Result<Self> {
        let file: MapFile = from_value(value)?;
        let dim = file.input_dim;
        let comps = file.components.into_iter().map(|c| poly_from_terms(c, dim)).collect::<Result<Vec<_>>>()?;
        PolyMap::new(dim, comps)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PointFile {
    schema_version: u32,
    kind: String,
    coords: Vec<JsonQ>,
}

impl Document for RationalPoint {
    const KIND: &'static str = "point";

    fn to_value(&self) -> serde_json::Value {
        to_value(&PointFile {
            schema_version: SCHEMA_VERSION,
            kind: Self::KIND.into(),
            coords: self.coords().iter().cloned().map(JsonQ).collect(),
        })
    }

    fn from_value(value: serde_json::Value) -> Result<Self> {
        let file: PointFile = from_value(value)?;
        Ok(RationalPoint(file.coords.into_iter().map(|c| c.0).collect()))
    }
}

/// Parses a comma-separated list of rationals such as `"1, -1/2, 3"`.
pub fn parse_point(text: &str) -> Result<RationalPoint> {
    if text.trim().is_empty() {
        return Ok(RationalPoint(Vec::new()));
    }
    text.split(',').map(crate::rational::parse_q).collect::<Result<Vec<_>>>().map(RationalPoint)
}
