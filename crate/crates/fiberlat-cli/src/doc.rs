//! On-disk JSON schema for fiber configurations.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use fiberlat::{CurveClass, Edge, FiberConfiguration};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveDoc {
    pub id: usize,
    pub field_degree: i64,
    pub self_int: i64,
    pub canonical_deg: i64,
    pub multiplicity: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    pub a: usize,
    pub b: usize,
    pub intersection: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigDocument {
    pub schema_version: u32,
    pub characteristic: u32,
    pub is_full_fiber: bool,
    pub curves: Vec<CurveDoc>,
    pub edges: Vec<EdgeDoc>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LoadErrorKind {
    Io,
    Parse,
    Schema,
    Invariant,
}

impl LoadErrorKind {
    pub fn label(self) -> &'static str {
        match self {
            LoadErrorKind::Io => "io",
            LoadErrorKind::Parse => "parse",
            LoadErrorKind::Schema => "schema",
            LoadErrorKind::Invariant => "invariant",
        }
    }
}

#[derive(Debug)]
pub struct LoadError {
    pub kind: LoadErrorKind,
    pub message: String,
}

impl fmt::Display for LoadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} error: {}", self.kind.label(), self.message)
    }
}

fn schema_error(message: String) -> LoadError {
    LoadError {
        kind: LoadErrorKind::Schema,
        message,
    }
}

/// Validate the document shape and build the configuration; every rejection
/// names the violated constraint.
pub fn from_document(doc: &ConfigDocument) -> Result<FiberConfiguration, LoadError> {
    if doc.schema_version != SCHEMA_VERSION {
        return Err(schema_error(format!(
            "unsupported schema_version {}, expected {SCHEMA_VERSION}",
            doc.schema_version
        )));
    }
    let n = doc.curves.len();
    let mut ordered: Vec<Option<&CurveDoc>> = vec![None; n];
    for c in &doc.curves {
        if c.id >= n {
            return Err(schema_error(format!(
                "curve id {} is not dense in 0..{n}",
                c.id
            )));
        }
        if ordered[c.id].is_some() {
            return Err(schema_error(format!("duplicate curve id {}", c.id)));
        }
        ordered[c.id] = Some(c);
    }
    let curves: Vec<CurveClass> = ordered
        .into_iter()
        .flatten()
        .map(|c| {
            CurveClass::new(
                c.id,
                c.field_degree,
                c.self_int,
                c.canonical_deg,
                c.multiplicity,
            )
        })
        .collect();
    for e in &doc.edges {
        if e.a >= n || e.b >= n {
            return Err(schema_error(format!(
                "edge ({},{}) references an unknown curve id",
                e.a, e.b
            )));
        }
    }
    let edges: Vec<Edge> = doc
        .edges
        .iter()
        .map(|e| Edge {
            a: e.a,
            b: e.b,
            intersection: e.intersection,
        })
        .collect();
    FiberConfiguration::new(curves, &edges, doc.characteristic, doc.is_full_fiber).map_err(|e| {
        LoadError {
            kind: LoadErrorKind::Invariant,
            message: e.to_string(),
        }
    })
}

/// Canonical document for a configuration: curves by id, edges sorted.
pub fn to_document(cfg: &FiberConfiguration) -> ConfigDocument {
    let mut edges: Vec<EdgeDoc> = cfg
        .edges()
        .iter()
        .map(|e| EdgeDoc {
            a: e.a.min(e.b),
            b: e.a.max(e.b),
            intersection: e.intersection,
        })
        .collect();
    edges.sort_by_key(|e| (e.a, e.b));
    ConfigDocument {
        schema_version: SCHEMA_VERSION,
        characteristic: cfg.characteristic(),
        is_full_fiber: cfg.is_full_fiber(),
        curves: cfg
            .curves()
            .iter()
            .map(|c| CurveDoc {
                id: c.id,
                field_degree: c.field_degree,
                self_int: c.self_int,
                canonical_deg: c.canonical_deg,
                multiplicity: c.multiplicity,
            })
            .collect(),
        edges,
    }
}

pub fn load(path: &Path) -> Result<FiberConfiguration, LoadError> {
    let text = std::fs::read_to_string(path).map_err(|e| LoadError {
        kind: LoadErrorKind::Io,
        message: format!("{}: {e}", path.display()),
    })?;
    let doc: ConfigDocument = serde_json::from_str(&text).map_err(|e| LoadError {
        kind: LoadErrorKind::Parse,
        message: e.to_string(),
    })?;
    from_document(&doc)
}
