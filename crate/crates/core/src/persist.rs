//! Canonical JSON files: `gsc-1` for graded algebras, `tsc-1` for triple
//! systems. Keys are sorted, pairs appear in lexicographic order and every
//! coefficient is an integer in [1, p), so equal objects give equal bytes.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::exactla::{Fp, Matrix, SparseMatrix, SparseVec};
use crate::galg::{AlgebraKind, GradedAlgebra, Provenance};
use crate::triples::{TripleKind, TripleSystem};

pub const ALGEBRA_FORMAT: &str = "gsc-1";
pub const TRIPLE_FORMAT: &str = "tsc-1";

#[derive(Debug, Error)]
pub enum PersistError {
    #[error("malformed file: {0}")]
    Malformed(String),
    #[error("invalid contents: {0}")]
    Invalid(String),
    #[error("unsupported format tag {0:?}")]
    UnsupportedFormat(String),
}

impl PersistError {
    pub fn code(&self) -> &'static str {
        match self {
            PersistError::Malformed(_) => "malformed",
            PersistError::Invalid(_) => "invalid",
            PersistError::UnsupportedFormat(_) => "unsupported-format",
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BracketEntry {
    i: usize,
    j: usize,
    v: Vec<(usize, u32)>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraFile {
    format: String,
    p: u32,
    kind: AlgebraKind,
    dim_even: usize,
    dim_odd: usize,
    labels: Vec<String>,
    brackets: Vec<BracketEntry>,
    provenance: Option<Provenance>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TripleEntry {
    i: usize,
    j: usize,
    m: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TripleFile {
    format: String,
    p: u32,
    dim: usize,
    kind: TripleKind,
    form: Option<Vec<u32>>,
    labels: Vec<String>,
    triples: Vec<TripleEntry>,
}

pub enum Artifact {
    Algebra(GradedAlgebra),
    Triple(TripleSystem),
}

/// Sorted keys come from serde_json's BTreeMap-backed objects.
fn canonical(v: impl Serialize) -> Vec<u8> {
    let value = serde_json::to_value(v).expect("file structs serialize");
    let mut out = serde_json::to_vec_pretty(&value).expect("values serialize");
    out.push(b'\n');
    out
}

pub fn export_algebra(g: &GradedAlgebra) -> Vec<u8> {
    let mut brackets: Vec<BracketEntry> = g
        .stored_pairs()
        .filter(|(_, v)| !v.is_zero())
        .map(|((i, j), v)| BracketEntry { i, j, v: v.entries.iter().map(|&(k, c)| (k as usize, c)).collect() })
        .collect();
    brackets.sort_by_key(|b| (b.i, b.j));
    canonical(AlgebraFile {
        format: ALGEBRA_FORMAT.into(),
        p: g.field().p(),
        kind: g.kind(),
        dim_even: g.dim_even(),
        dim_odd: g.dim_odd(),
        labels: g.labels().to_vec(),
        brackets,
        provenance: g.provenance().cloned(),
    })
}

pub fn export_triple(t: &TripleSystem) -> Vec<u8> {
    let mut triples: Vec<TripleEntry> =
        t.stored_ops().filter(|(_, m)| !m.is_zero()).map(|((i, j), m)| TripleEntry { i, j, m: m.to_dense().into_flat() }).collect();
    triples.sort_by_key(|e| (e.i, e.j));
    canonical(TripleFile {
        format: TRIPLE_FORMAT.into(),
        p: t.field().p(),
        dim: t.dim(),
        kind: t.kind(),
        form: t.form().map(|b| b.gram().clone().into_flat()),
        labels: t.labels().to_vec(),
        triples,
    })
}

fn field(p: u32) -> Result<Fp, PersistError> {
    Fp::new(p).map_err(|e| PersistError::Invalid(e.to_string()))
}

fn check_coefficients(p: u32, what: &str, values: impl IntoIterator<Item = u32>) -> Result<(), PersistError> {
    match values.into_iter().find(|&c| c >= p) {
        Some(c) => Err(PersistError::Invalid(format!("{what} has coefficient {c} outside [0, {p})"))),
        None => Ok(()),
    }
}

fn algebra_from_file(file: AlgebraFile) -> Result<GradedAlgebra, PersistError> {
    let f = field(file.p)?;
    let n = file.dim_even + file.dim_odd;
    let mut seen = std::collections::BTreeSet::new();
    let mut pairs = Vec::with_capacity(file.brackets.len());
    for b in file.brackets {
        if !seen.insert((b.i, b.j)) {
            return Err(PersistError::Invalid(format!("pair ({}, {}) listed twice", b.i, b.j)));
        }
        if b.v.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(PersistError::Invalid(format!("bracket ({}, {}) is not sorted by index", b.i, b.j)));
        }
        if let Some(&(k, _)) = b.v.iter().find(|e| e.0 >= n) {
            return Err(PersistError::Invalid(format!("bracket ({}, {}) names index {k}", b.i, b.j)));
        }
        let v = SparseVec { entries: b.v.iter().map(|&(k, c)| (k as u32, c)).collect() };
        pairs.push(((b.i, b.j), v));
    }
    let g = GradedAlgebra::from_pairs(f, file.kind, file.dim_even, file.dim_odd, Some(file.labels), pairs).map_err(|e| PersistError::Invalid(e.to_string()))?;
    Ok(match file.provenance {
        Some(prov) => {
            if let Some(b) = prov.blocks.iter().find(|b| b.start + b.len > n) {
                return Err(PersistError::Invalid(format!("provenance block {} exceeds the dimension", b.name)));
            }
            g.with_provenance(prov)
        }
        None => g,
    })
}

fn triple_from_file(file: TripleFile) -> Result<TripleSystem, PersistError> {
    let f = field(file.p)?;
    let n = file.dim;
    let form = match file.form {
        Some(flat) => {
            if flat.len() != n * n {
                return Err(PersistError::Invalid(format!("form has {} entries, expected {}", flat.len(), n * n)));
            }
            check_coefficients(file.p, "form", flat.iter().copied())?;
            Some(Matrix::from_flat(n, n, flat))
        }
        None => None,
    };
    let mut seen = std::collections::BTreeSet::new();
    let mut stored = Vec::with_capacity(file.triples.len());
    for e in file.triples {
        if !seen.insert((e.i, e.j)) {
            return Err(PersistError::Invalid(format!("pair ({}, {}) listed twice", e.i, e.j)));
        }
        if e.m.len() != n * n {
            return Err(PersistError::Invalid(format!("operator ({}, {}) has {} entries, expected {}", e.i, e.j, e.m.len(), n * n)));
        }
        check_coefficients(file.p, "operator", e.m.iter().copied())?;
        stored.push(((e.i, e.j), SparseMatrix::from_flat(n, n, &e.m)));
    }
    TripleSystem::from_stored(f, n, file.kind, form, Some(file.labels), stored).map_err(|e| PersistError::Invalid(e.to_string()))
}

pub fn import(bytes: &[u8]) -> Result<Artifact, PersistError> {
    let value: Value = serde_json::from_slice(bytes).map_err(|e| PersistError::Malformed(e.to_string()))?;
    let tag = match value.get("format") {
        Some(Value::String(s)) => s.clone(),
        Some(other) => return Err(PersistError::Malformed(format!("format tag is not a string: {other}"))),
        None => return Err(PersistError::Malformed("missing format tag".into())),
    };
    let schema = |e: serde_json::Error| PersistError::Malformed(e.to_string());
    match tag.as_str() {
        ALGEBRA_FORMAT => Ok(Artifact::Algebra(algebra_from_file(serde_json::from_value(value).map_err(schema)?)?)),
        TRIPLE_FORMAT => Ok(Artifact::Triple(triple_from_file(serde_json::from_value(value).map_err(schema)?)?)),
        _ => Err(PersistError::UnsupportedFormat(tag)),
    }
}

pub fn import_algebra(bytes: &[u8]) -> Result<GradedAlgebra, PersistError> {
    match import(bytes)? {
        Artifact::Algebra(g) => Ok(g),
        Artifact::Triple(_) => Err(PersistError::UnsupportedFormat(format!("{TRIPLE_FORMAT} where {ALGEBRA_FORMAT} was expected"))),
    }
}

pub fn import_triple(bytes: &[u8]) -> Result<TripleSystem, PersistError> {
    match import(bytes)? {
        Artifact::Triple(t) => Ok(t),
        Artifact::Algebra(_) => Err(PersistError::UnsupportedFormat(format!("{ALGEBRA_FORMAT} where {TRIPLE_FORMAT} was expected"))),
    }
}
