//! Named methods. The built-in catalog is compiled in from
//! `fixtures/catalog.json`; further catalog files may add or replace entries.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::method::{Method, PartitionedMethod, SplittingScheme};
use crate::error::{Error, Result};
use crate::io::{tableau_body, tableau_from_body, Document, SCHEMA_VERSION};
use crate::rational::{JsonQ, Q};
use crate::series::{ButcherTableau, PartitionSpec};

const BUILTIN: &str = include_str!("../../fixtures/catalog.json");

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CatalogEntry {
    Method(Method),
    Splitting(SplittingScheme),
}

impl CatalogEntry {
    pub fn kind(&self) -> &'static str {
        match self {
            CatalogEntry::Method(Method::RungeKutta(_)) => "runge-kutta",
            CatalogEntry::Method(Method::Partitioned(_)) => "partitioned",
            CatalogEntry::Method(Method::Series(_)) => "series",
            CatalogEntry::Method(Method::ExactFlow) => "exact-flow",
            CatalogEntry::Splitting(_) => "splitting",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Catalog {
    entries: BTreeMap<String, CatalogEntry>,
}

impl Catalog {
    pub fn builtin() -> Catalog {
        Catalog::from_json(BUILTIN).expect("built-in catalog is valid")
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &CatalogEntry)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn get(&self, name: &str) -> Result<&CatalogEntry> {
        self.entries.get(name).ok_or_else(|| Error::UnknownMethod(name.to_string()))
    }

    pub fn method(&self, name: &str) -> Result<Method> {
        match self.get(name)? {
            CatalogEntry::Method(m) => Ok(m.clone()),
            CatalogEntry::Splitting(_) => Err(Error::Precondition(format!("{name} is a splitting, not a single-field method"))),
        }
    }

    pub fn splitting(&self, name: &str) -> Result<SplittingScheme> {
        match self.get(name)? {
            CatalogEntry::Splitting(s) => Ok(s.clone()),
            CatalogEntry::Method(_) => Err(Error::Precondition(format!("{name} is not a splitting"))),
        }
    }

    pub fn insert(&mut self, name: impl Into<String>, entry: CatalogEntry) {
        self.entries.insert(name.into(), entry);
    }

    /// Entries of `other` replace entries of the same name.
    pub fn extend(&mut self, other: Catalog) {
        self.entries.extend(other.entries);
    }
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::Format(format!("catalog entry lacks {key:?}")))
}

fn tableau_from_entry(v: &Value) -> Result<ButcherTableau> {
    let mut body = v.clone();
    let obj = body.as_object_mut().ok_or_else(|| Error::Format("tableau must be an object".into()))?;
    obj.remove("name");
    obj.insert("schema_version".into(), json!(SCHEMA_VERSION));
    obj.insert("kind".into(), json!(ButcherTableau::KIND));
    tableau_from_body(body)
}

fn tableau_to_entry(t: &ButcherTableau) -> Value {
    let mut v = tableau_body(t);
    let obj = v.as_object_mut().expect("object");
    obj.remove("schema_version");
    obj.remove("kind");
    v
}

fn entry_from_value(v: &Value) -> Result<(String, CatalogEntry)> {
    let name = field(v, "name")?.as_str().ok_or_else(|| Error::Format("name must be a string".into()))?.to_string();
    let kind = field(v, "kind")?.as_str().unwrap_or_default();
    let entry = match kind {
        "runge-kutta" => CatalogEntry::Method(Method::RungeKutta(tableau_from_entry(field(v, "tableau")?)?)),
        "partitioned" => {
            let tabs = field(v, "tableaux")?
                .as_array()
                .ok_or_else(|| Error::Format("tableaux must be a list".into()))?
                .iter()
                .map(tableau_from_entry)
                .collect::<Result<Vec<_>>>()?;
            let blocks = match v.get("blocks") {
                Some(b) => Some(PartitionSpec::from_sizes(&serde_json::from_value::<Vec<usize>>(b.clone())?)?),
                None => None,
            };
            CatalogEntry::Method(Method::Partitioned(PartitionedMethod::new(tabs, blocks)?))
        }
        "splitting" => {
            let parts: usize = serde_json::from_value(field(v, "parts")?.clone())?;
            let stages: Vec<(usize, JsonQ)> = serde_json::from_value(field(v, "stages")?.clone())?;
            CatalogEntry::Splitting(SplittingScheme::new(parts, stages.into_iter().map(|(p, c)| (p, c.0)).collect())?)
        }
        "series" => CatalogEntry::Method(Method::Series(crate::series::SeriesMap::from_value(field(v, "series")?.clone())?)),
        "exact-flow" => CatalogEntry::Method(Method::ExactFlow),
        other => return Err(Error::Format(format!("unknown catalog entry kind {other:?}"))),
    };
    Ok((name, entry))
}

fn entry_to_value(name: &str, entry: &CatalogEntry) -> Value {
    let mut v = json!({ "name": name, "kind": entry.kind() });
    let obj = v.as_object_mut().expect("object");
    match entry {
        CatalogEntry::Method(Method::RungeKutta(t)) => {
            obj.insert("tableau".into(), tableau_to_entry(t));
        }
        CatalogEntry::Method(Method::Partitioned(p)) => {
            obj.insert("tableaux".into(), Value::Array(p.tableaux().iter().map(tableau_to_entry).collect()));
            if let Some(spec) = p.partition() {
                obj.insert("blocks".into(), json!(spec.blocks().iter().map(|r| r.len()).collect::<Vec<_>>()));
            }
        }
        CatalogEntry::Method(Method::Series(s)) => {
            obj.insert("series".into(), s.to_value());
        }
        CatalogEntry::Method(Method::ExactFlow) => {}
        CatalogEntry::Splitting(s) => {
            obj.insert("parts".into(), json!(s.parts()));
            let stages: Vec<(usize, JsonQ)> = s.stages().iter().map(|(p, c): &(usize, Q)| (*p, JsonQ(c.clone()))).collect();
            obj.insert("stages".into(), serde_json::to_value(stages).expect("serializable"));
        }
    }
    v
}

impl Document for Catalog {
    const KIND: &'static str = "catalog";

    fn to_value(&self) -> Value {
        json!({
            "schema_version": SCHEMA_VERSION,
            "kind": Self::KIND,
            "methods": self.entries.iter().map(|(n, e)| entry_to_value(n, e)).collect::<Vec<_>>(),
        })
    }

    fn from_value(value: Value) -> Result<Self> {
        let methods = field(&value, "methods")?.as_array().ok_or_else(|| Error::Format("methods must be a list".into()))?;
        let mut entries = BTreeMap::new();
        for m in methods {
            let (name, entry) = entry_from_value(m)?;
            if entries.insert(name.clone(), entry).is_some() {
                return Err(Error::Format(format!("method {name:?} defined twice")));
            }
        }
        Ok(Catalog { entries })
    }
}
