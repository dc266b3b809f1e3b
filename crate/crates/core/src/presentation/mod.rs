//! Finite presentations `K{x_1..x_n}/⟨b_1..b_m⟩`: the JSON document form,
//! validation, the skew-PBW shape classifier and the built-in catalog.

mod catalog;
mod classify;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::freealg::{parse_poly, Names, Poly};
use crate::scalar::{FieldKind, FieldSpec, ScalarError};

pub use catalog::{catalog, catalog_doc, catalog_entries, catalog_list, CatalogEntry};
pub use classify::{associated_graded, classify, pbw_shape, ClassificationFlags, PbwShape};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("invalid presentation document: {0}")]
    Document(String),
    #[error("relation {relation}: {source}")]
    Parse {
        relation: usize,
        #[source]
        source: crate::freealg::ParseError,
    },
    #[error("relation {relation} uses unknown generator or parameter `{name}`")]
    UnknownGenerator { relation: usize, name: String },
    #[error("relation {0} is zero")]
    ZeroRelation(usize),
    #[error("generator names must be nonempty, distinct identifiers (at most 255)")]
    BadGenerators,
    #[error("weights must list one positive integer per generator")]
    BadWeights,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("presentation is not of skew PBW shape")]
    NotPbwShape,
    #[error("unknown catalog entry `{0}`; run `sgk catalog list`")]
    UnknownCatalogEntry(String),
}

/// Field selection in the document: `{"kind": "Q"}` or `{"kind": "Fp", "p": 5}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(tag = "kind")]
pub enum FieldDoc {
    #[default]
    Q,
    Fp {
        p: u64,
    },
}

impl FieldDoc {
    pub fn kind(self) -> Result<FieldKind, ScalarError> {
        match self {
            FieldDoc::Q => Ok(FieldKind::Rationals),
            FieldDoc::Fp { p } => FieldKind::prime(p),
        }
    }

    /// Accepts `Q` or `Fp:p`.
    pub fn parse(text: &str) -> Result<Self, ScalarError> {
        match text.trim() {
            "Q" | "q" => Ok(FieldDoc::Q),
            t => {
                let p = t
                    .strip_prefix("Fp:")
                    .and_then(|p| p.parse::<u64>().ok())
                    .ok_or_else(|| ScalarError::Parse(format!("field `{t}`: expected Q or Fp:p")))?;
                FieldKind::prime(p)?;
                Ok(FieldDoc::Fp { p })
            }
        }
    }
}

fn default_true() -> bool {
    true
}

/// The serialized form of a presentation. Relations are plain-text
/// polynomials that may mention parameters; parameters are substituted when
/// the document is built.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationDoc {
    pub name: String,
    pub generators: Vec<String>,
    #[serde(default)]
    pub field: FieldDoc,
    #[serde(default)]
    pub params: BTreeMap<String, String>,
    pub relations: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<u32>>,
    #[serde(default = "default_true")]
    pub connected: bool,
}

impl PresentationDoc {
    pub fn from_json(text: &str) -> Result<Self, PresentationError> {
        serde_json::from_str(text).map_err(|e| PresentationError::Document(e.to_string()))
    }

    pub fn build(&self) -> Result<Presentation, PresentationError> {
        parse_presentation(self)
    }
}

/// A validated presentation with parameters substituted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub name: String,
    pub generators: Vec<String>,
    pub relations: Vec<Poly>,
    pub field: FieldSpec,
    /// Grading weights, one per generator; `None` means all 1.
    pub weights: Option<Vec<u32>>,
    pub connected: bool,
}

pub fn parse_presentation(doc: &PresentationDoc) -> Result<Presentation, PresentationError> {
    let gens = &doc.generators;
    let valid_name = |g: &String| {
        let mut cs = g.chars();
        matches!(cs.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
            && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
    };
    let distinct = gens.iter().collect::<std::collections::BTreeSet<_>>().len() == gens.len();
    if gens.len() > 255 || !distinct || !gens.iter().all(valid_name) {
        return Err(PresentationError::BadGenerators);
    }
    if let Some(w) = &doc.weights {
        if w.len() != gens.len() || w.contains(&0) {
            return Err(PresentationError::BadWeights);
        }
    }
    let kind = doc.field.kind()?;
    let mut field = FieldSpec::new(kind);
    for (name, value) in &doc.params {
        field = field.with_param(name, value)?;
    }
    let scope = Names { generators: gens, params: &field.params, field: kind };
    let relations = doc
        .relations
        .iter()
        .enumerate()
        .map(|(i, text)| {
            let f = parse_poly(text, &scope).map_err(|e| match e.unknown_name.clone() {
                Some(name) => PresentationError::UnknownGenerator { relation: i + 1, name },
                None => PresentationError::Parse { relation: i + 1, source: e },
            })?;
            if f.is_zero() {
                return Err(PresentationError::ZeroRelation(i + 1));
            }
            Ok(f)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Presentation {
        name: doc.name.clone(),
        generators: gens.clone(),
        relations,
        field,
        weights: doc.weights.clone(),
        connected: doc.connected,
    })
}

impl Presentation {
    pub fn n(&self) -> usize {
        self.generators.len()
    }

    pub fn kind(&self) -> FieldKind {
        self.field.kind
    }

    pub fn weights_or_ones(&self) -> Vec<u32> {
        self.weights.clone().unwrap_or_else(|| vec![1; self.n()])
    }

    pub fn has_unit_weights(&self) -> bool {
        self.weights_or_ones().iter().all(|&w| w == 1)
    }

    /// True iff no relation has a nonzero constant term (`b_i ∈ F_{≥1}`).
    pub fn relations_in_positive_degree(&self) -> bool {
        self.relations.iter().all(|r| r.homogeneous_component(0).is_zero())
    }

    pub fn is_homogeneous(&self) -> bool {
        self.relations.iter().all(Poly::is_homogeneous)
    }

    pub fn render_relations(&self) -> Vec<String> {
        self.relations.iter().map(|r| r.render(&self.generators)).collect()
    }

    /// The document form with parameters already substituted.
    pub fn to_doc(&self) -> PresentationDoc {
        PresentationDoc {
            name: self.name.clone(),
            generators: self.generators.clone(),
            field: match self.field.kind {
                FieldKind::Rationals => FieldDoc::Q,
                FieldKind::PrimeField(p) => FieldDoc::Fp { p },
            },
            params: BTreeMap::new(),
            relations: self.render_relations(),
            weights: self.weights.clone(),
            connected: self.connected,
        }
    }

    pub fn with_relations(&self, name: String, relations: Vec<Poly>) -> Presentation {
        Presentation { name, relations, ..self.clone() }
    }

    /// Hex SHA-256 over the field, generators, weights and rendered relations.
    pub fn fingerprint(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.field.kind.label());
        for g in &self.generators {
            h.update([0u8]);
            h.update(g);
        }
        h.update([1u8]);
        for w in self.weights_or_ones() {
            h.update(w.to_le_bytes());
        }
        for r in self.render_relations() {
            h.update([2u8]);
            h.update(r);
        }
        hex::encode(h.finalize())
    }
}
