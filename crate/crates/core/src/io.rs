//! Diagram files.
//!
//! A diagram file is a JSON document:
//!
//! ```json
//! {
//!   "format": "czedli-diagram",
//!   "version": 1,
//!   "elements": [{ "id": 0, "u": "0/1", "v": "1/2" }],
//!   "covers": [[0, 1]],
//!   "metadata": { "script": "grid 2 2\n", "seed": 7 }
//! }
//! ```
//!
//! Coordinates are exact `"numerator/denominator"` strings in lowest terms.
//! Element ids must be `0..n` in order. Unknown fields are rejected.

use std::fmt;

use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::geometry::{Coord, Diagram, DiagramError, RawDiagram};
use crate::lattice::Elem;
use crate::scalar::RationalText;

pub const FORMAT_TAG: &str = "czedli-diagram";
pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub script: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Exact<S>(S);

impl<S: RationalText> Serialize for Exact<S> {
    fn serialize<Z: Serializer>(&self, s: Z) -> Result<Z::Ok, Z::Error> {
        s.serialize_str(&self.0.to_ratio_string())
    }
}

impl<'de, S: RationalText> Deserialize<'de> for Exact<S> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        S::parse_ratio(&text).map(Exact).map_err(de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, bound = "S: RationalText")]
struct ElementRecord<S> {
    id: Elem,
    u: Exact<S>,
    v: Exact<S>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, bound = "S: RationalText")]
struct FileBody<S> {
    format: String,
    version: u32,
    elements: Vec<ElementRecord<S>>,
    covers: Vec<(Elem, Elem)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    metadata: Option<Metadata>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DecodeError {
    #[error("{FORMAT_TAG} v{FORMAT_VERSION}: parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("unsupported format {format:?} version {version} (expected {FORMAT_TAG} v{FORMAT_VERSION})")]
    Version { format: String, version: u32 },
    #[error("element record {position} has id {id}; ids must be 0..n in order")]
    ElementId { position: usize, id: Elem },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

impl From<serde_json::Error> for DecodeError {
    fn from(e: serde_json::Error) -> Self {
        let full = e.to_string();
        // serde_json appends " at line L column C"; keep only the message part.
        let message = match full.rfind(" at line ") {
            Some(idx) => full[..idx].to_string(),
            None => full,
        };
        DecodeError::Parse { line: e.line(), column: e.column(), message }
    }
}

/// A decoded diagram file before lattice and geometry checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramFile<S> {
    pub raw: RawDiagram<S>,
    pub metadata: Option<Metadata>,
}

impl<S: RationalText> fmt::Display for DiagramFile<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = FileBody {
            format: FORMAT_TAG.to_string(),
            version: FORMAT_VERSION,
            elements: self
                .raw
                .positions
                .iter()
                .enumerate()
                .map(|(id, c)| ElementRecord { id, u: Exact(c.u.clone()), v: Exact(c.v.clone()) })
                .collect(),
            covers: self.raw.covers.clone(),
            metadata: self.metadata.clone(),
        };
        let text = serde_json::to_string_pretty(&body).map_err(|_| fmt::Error)?;
        writeln!(f, "{text}")
    }
}

/// Serializes a diagram; output is deterministic.
pub fn encode<S: RationalText>(d: &Diagram<S>, metadata: Option<Metadata>) -> String {
    DiagramFile { raw: d.to_raw(), metadata }.to_string()
}

/// Parses a diagram file without validating the lattice or the drawing.
pub fn decode_raw<S: RationalText>(text: &str) -> Result<DiagramFile<S>, DecodeError> {
    let body: FileBody<S> = serde_json::from_str(text)?;
    if body.format != FORMAT_TAG || body.version != FORMAT_VERSION {
        return Err(DecodeError::Version { format: body.format, version: body.version });
    }
    let mut positions = Vec::with_capacity(body.elements.len());
    for (position, rec) in body.elements.into_iter().enumerate() {
        if rec.id != position {
            return Err(DecodeError::ElementId { position, id: rec.id });
        }
        positions.push(Coord::new(rec.u.0, rec.v.0));
    }
    Ok(DiagramFile { raw: RawDiagram { positions, covers: body.covers }, metadata: body.metadata })
}

/// Parses and fully validates a diagram file.
pub fn decode<S: RationalText>(text: &str) -> Result<(Diagram<S>, Option<Metadata>), DecodeError> {
    let file = decode_raw::<S>(text)?;
    Ok((file.raw.into_diagram()?, file.metadata))
}
