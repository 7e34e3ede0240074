//! On-disk JSON documents. Every document carries `"v": 1`.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use wpi_core::exact_arith::{format_scalar, parse_scalar, Scalar};
use wpi_core::pyramid::Pyramid;
use wpi_core::relations::{Relation, RelationSet};
use wpi_core::tableau::{Tableau, TableauDelta, TriIndex};
use wpi_core::yangian_tensor::GlWeight;

pub const VERSION: u32 = 1;

#[derive(Debug)]
pub struct InputError {
    pub path: String,
    pub message: String,
    pub line: Option<usize>,
    pub column: Option<usize>,
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.line, self.column) {
            (Some(l), Some(c)) => write!(f, "{}:{}:{}: {}", self.path, l, c, self.message),
            _ => write!(f, "{}: {}", self.path, self.message),
        }
    }
}

impl InputError {
    pub fn new(path: &str, message: impl Into<String>) -> Self {
        InputError {
            path: path.to_string(),
            message: message.into(),
            line: None,
            column: None,
        }
    }
}

#[derive(Deserialize)]
struct Versioned {
    v: u32,
}

/// Reads a versioned document; syntax errors keep their line and column.
pub fn load<T: DeserializeOwned>(path: &Path) -> Result<T, InputError> {
    let name = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| InputError::new(&name, e.to_string()))?;
    let located = |e: serde_json::Error| InputError {
        path: name.clone(),
        message: e.to_string(),
        line: Some(e.line()),
        column: Some(e.column()),
    };
    let head: Versioned = serde_json::from_str(&text).map_err(located)?;
    if head.v != VERSION {
        return Err(InputError::new(&name, format!("unsupported schema version {}", head.v)));
    }
    serde_json::from_str(&text).map_err(located)
}

#[derive(Deserialize)]
pub struct PyramidDoc {
    pub rows: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
pub struct RelationsDoc {
    pub edges: Vec<Relation>,
}

impl RelationsDoc {
    pub fn from_set(c: &RelationSet) -> Self {
        RelationsDoc {
            edges: c.edges().iter().copied().collect(),
        }
    }
}

#[derive(Deserialize)]
pub struct TableauEntry {
    #[serde(flatten)]
    pub triple: TriIndex,
    pub class: String,
    #[serde(default)]
    pub offset: i64,
}

#[derive(Deserialize)]
pub struct TableauDoc {
    pub entries: Vec<TableauEntry>,
    #[serde(default)]
    pub classes: BTreeMap<String, ScalarLit>,
}

/// A rational written either as a JSON integer or as a `"p/q"` string.
#[derive(Clone, Deserialize)]
#[serde(untagged)]
pub enum ScalarLit {
    Int(i64),
    Text(String),
}

impl ScalarLit {
    pub fn value(&self) -> Result<Scalar, String> {
        match self {
            ScalarLit::Int(n) => Ok(Scalar::from_integer((*n).into())),
            ScalarLit::Text(s) => parse_scalar(s).map_err(|e| e.to_string()),
        }
    }
}

#[derive(Deserialize)]
pub struct WeightsDoc {
    pub weights: Vec<Vec<ScalarLit>>,
    #[serde(default)]
    pub points: Option<Vec<ScalarLit>>,
}

pub fn pyramid(path: &Path) -> Result<Pyramid, InputError> {
    let doc: PyramidDoc = load(path)?;
    Pyramid::new(doc.rows).map_err(|e| InputError::new(&path.display().to_string(), e.to_string()))
}

pub fn relations(path: &Path, p: &Pyramid) -> Result<RelationSet, InputError> {
    let doc: RelationsDoc = load(path)?;
    RelationSet::new(p.clone(), doc.edges).map_err(|e| InputError::new(&path.display().to_string(), e.to_string()))
}

pub fn tableau(path: &Path, p: &Pyramid) -> Result<Tableau, InputError> {
    let name = path.display().to_string();
    let doc: TableauDoc = load(path)?;
    let entries: Vec<(TriIndex, String, i64)> = doc
        .entries
        .into_iter()
        .map(|e| (e.triple, e.class, e.offset))
        .collect();
    let mut pinned = BTreeMap::new();
    for (class, lit) in doc.classes {
        pinned.insert(class, lit.value().map_err(|e| InputError::new(&name, e))?);
    }
    Tableau::new(p.clone(), &entries, &pinned).map_err(|e| InputError::new(&name, e.to_string()))
}

pub fn weights(path: &Path) -> Result<(Vec<GlWeight>, Vec<Scalar>), InputError> {
    let name = path.display().to_string();
    let doc: WeightsDoc = load(path)?;
    let scalars = |xs: &[ScalarLit]| -> Result<Vec<Scalar>, InputError> {
        xs.iter()
            .map(|x| x.value().map_err(|e| InputError::new(&name, e)))
            .collect()
    };
    let mut ws = Vec::with_capacity(doc.weights.len());
    for w in &doc.weights {
        ws.push(GlWeight::new(scalars(w)?));
    }
    if ws.is_empty() {
        return Err(InputError::new(&name, "no weights given"));
    }
    if ws.iter().any(|w| w.n() != ws[0].n() || w.n() == 0) {
        return Err(InputError::new(&name, "weights must share a positive rank"));
    }
    let points = match doc.points {
        Some(ps) => scalars(&ps)?,
        None => vec![Scalar::from_integer(0.into()); ws.len()],
    };
    if points.len() != ws.len() {
        return Err(InputError::new(&name, "one evaluation point per weight is required"));
    }
    Ok((ws, points))
}

pub fn parse_triple(s: &str) -> Result<TriIndex, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("expected k,i,j but got {s:?}"));
    }
    let mut v = [0usize; 3];
    for (slot, part) in v.iter_mut().zip(&parts) {
        *slot = part.parse().map_err(|_| format!("bad index {part:?} in {s:?}"))?;
    }
    Ok(TriIndex {
        k: v[0],
        i: v[1],
        j: v[2],
    })
}

/// Sparse form of a tableau shift: only nonzero offsets.
#[derive(Serialize)]
pub struct SparseDelta {
    #[serde(flatten)]
    pub triple: TriIndex,
    pub shift: i64,
}

pub fn sparse(p: &Pyramid, z: &TableauDelta) -> Vec<SparseDelta> {
    z.to_sparse(p)
        .into_iter()
        .map(|(triple, shift)| SparseDelta { triple, shift })
        .collect()
}

pub fn scalar_strings(xs: &[Scalar]) -> Vec<String> {
    xs.iter().map(format_scalar).collect()
}
