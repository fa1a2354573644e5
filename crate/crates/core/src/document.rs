//! JSON framework documents.
//!
//! ```json
//! {
//!   "dimension": 2,
//!   "vertices": [
//!     { "id": "v1:0", "kind": "point", "coordinates": [0.0, 0.0] },
//!     { "id": "w1:*", "kind": "hyperplane", "normal": [-1.0, 1.0], "offset": 1.0 }
//!   ],
//!   "edges": [ { "ends": ["v1:0", "w1:*"], "kind": "ph" } ],
//!   "extrusion": { "order": 1, "directions": [[2.0, 2.0]], "fixed_sets": [["w1"]] },
//!   "pinning": { "coordinates": [["v1:0", 0]], "hyperplanes": [], "parallel_only": [] },
//!   "orbits": []
//! }
//! ```
//!
//! Vertex ids are `base:word` when the document has an extrusion of order
//! `t > 0`, and plain names otherwise. Numbers are written in shortest
//! round-trip form, so parsing a written document restores every
//! coordinate bit for bit.

use std::collections::BTreeSet;

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::framework::{Configuration, ExtrusionSpec, Framework, Placement};
use crate::graph::{EdgeKind, PhGraph, Vertex, VertexKind, VertexLabel};
use crate::rigidity::PinningSpec;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexEntry {
    pub id: String,
    /// `point` or `hyperplane`.
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coordinates: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normal: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub offset: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeEntry {
    pub ends: [String; 2],
    /// One of `pp`, `ph`, `hh-angle`, `hh-parallel`.
    pub kind: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtrusionEntry {
    pub order: usize,
    pub directions: Vec<Vec<f64>>,
    /// Base names of the hyperplanes containing each direction.
    #[serde(default)]
    pub fixed_sets: Vec<Vec<String>>,
    /// Directions generating the symmetry group; all when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub active: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PinningEntry {
    /// `[vertex id, coordinate index]` pairs; index `d` is a hyperplane offset.
    #[serde(default)]
    pub coordinates: Vec<(String, usize)>,
    #[serde(default)]
    pub hyperplanes: Vec<String>,
    #[serde(default)]
    pub parallel_only: Vec<String>,
}

/// The on-disk form of a framework with an optional pinning.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameworkDocument {
    pub dimension: usize,
    pub vertices: Vec<VertexEntry>,
    #[serde(default)]
    pub edges: Vec<EdgeEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extrusion: Option<ExtrusionEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pinning: Option<PinningEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub orbits: Vec<Vec<String>>,
}

fn doc_error(msg: impl Into<String>) -> Error {
    Error::Document(msg.into())
}

impl FrameworkDocument {
    /// Parses JSON text. Syntax and schema errors carry line and column.
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| {
            let full = e.to_string();
            let message = match full.rfind(" at line ") {
                Some(i) => full[..i].to_string(),
                None => full,
            };
            Error::Parse {
                line: e.line(),
                column: e.column(),
                message,
            }
        })
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents always serialise");
        s.push('\n');
        s
    }

    pub fn from_framework(f: &Framework, pin: Option<&PinningSpec>) -> Self {
        let g = f.graph();
        let id = |v: usize| g.vertex(v).label.to_string();
        let vertices = f
            .config()
            .placements
            .iter()
            .enumerate()
            .map(|(v, p)| match p {
                Placement::Point(x) => VertexEntry {
                    id: id(v),
                    kind: "point".into(),
                    coordinates: Some(x.iter().copied().collect()),
                    normal: None,
                    offset: None,
                },
                Placement::Hyperplane { normal, offset } => VertexEntry {
                    id: id(v),
                    kind: "hyperplane".into(),
                    coordinates: None,
                    normal: Some(normal.iter().copied().collect()),
                    offset: Some(*offset),
                },
            })
            .collect();
        let edges = g
            .edges()
            .iter()
            .map(|e| EdgeEntry {
                ends: [id(e.ends.0), id(e.ends.1)],
                kind: e.kind.tag().into(),
            })
            .collect();
        let extrusion = f.extrusion().map(|spec| {
            let all: Vec<usize> = (0..spec.order()).collect();
            ExtrusionEntry {
                order: spec.order(),
                directions: spec.directions.iter().map(|t| t.iter().copied().collect()).collect(),
                fixed_sets: g.fixed_sets().iter().map(|s| s.iter().cloned().collect()).collect(),
                active: (spec.active != all).then(|| spec.active.clone()),
            }
        });
        let pinning = pin.filter(|p| !p.is_empty()).map(|p| PinningEntry {
            coordinates: p.pinned_coords.iter().map(|&(v, c)| (id(v), c)).collect(),
            hyperplanes: p.fully_pinned.iter().map(|&v| id(v)).collect(),
            parallel_only: p.parallel_only.iter().map(|&v| id(v)).collect(),
        });
        let orbits = f
            .orbits()
            .iter()
            .map(|o| o.iter().map(|&v| id(v)).collect())
            .collect();
        FrameworkDocument {
            dimension: f.dim(),
            vertices,
            edges,
            extrusion,
            pinning,
            orbits,
        }
    }

    /// Builds the framework and, when present, the pinning.
    pub fn to_framework(&self) -> Result<(Framework, Option<PinningSpec>)> {
        let d = self.dimension;
        let order = self.extrusion.as_ref().map_or(0, |e| e.order);
        let mut vertices = Vec::with_capacity(self.vertices.len());
        let mut placements = Vec::with_capacity(self.vertices.len());
        for entry in &self.vertices {
            let label = parse_label(&entry.id, order)?;
            let (kind, placement) = match entry.kind.as_str() {
                "point" => {
                    if entry.normal.is_some() || entry.offset.is_some() {
                        return Err(doc_error(format!("point `{}` has hyperplane fields", entry.id)));
                    }
                    let x = entry
                        .coordinates
                        .as_ref()
                        .ok_or_else(|| doc_error(format!("point `{}` has no coordinates", entry.id)))?;
                    (VertexKind::Point, Placement::point(x))
                }
                "hyperplane" => {
                    if entry.coordinates.is_some() {
                        return Err(doc_error(format!("hyperplane `{}` has point coordinates", entry.id)));
                    }
                    let (a, r) = entry
                        .normal
                        .as_ref()
                        .zip(entry.offset)
                        .ok_or_else(|| doc_error(format!("hyperplane `{}` needs a normal and an offset", entry.id)))?;
                    (VertexKind::Hyperplane, Placement::hyperplane(a, r))
                }
                other => return Err(doc_error(format!("unknown vertex kind `{other}`"))),
            };
            vertices.push(Vertex { label, kind });
            placements.push(placement);
        }
        let lookup = |id: &str| -> Result<usize> {
            let label = parse_label(id, order)?;
            vertices
                .iter()
                .position(|v| v.label == label)
                .ok_or_else(|| Error::UnknownVertex(id.to_string()))
        };
        let mut edges = Vec::with_capacity(self.edges.len());
        for e in &self.edges {
            let kind = EdgeKind::from_tag(&e.kind).ok_or_else(|| doc_error(format!("unknown edge kind `{}`", e.kind)))?;
            edges.push((lookup(&e.ends[0])?, lookup(&e.ends[1])?, kind));
        }
        let orbits = self
            .orbits
            .iter()
            .map(|o| o.iter().map(|id| lookup(id)).collect::<Result<Vec<usize>>>())
            .collect::<Result<Vec<_>>>()?;

        let spec = match &self.extrusion {
            Some(e) => {
                if e.directions.len() != e.order {
                    return Err(doc_error(format!(
                        "extrusion order {} but {} directions",
                        e.order,
                        e.directions.len()
                    )));
                }
                let directions = e.directions.iter().map(|t| DVector::from_column_slice(t)).collect();
                let fixed_sets: Vec<BTreeSet<String>> =
                    e.fixed_sets.iter().map(|s| s.iter().cloned().collect()).collect();
                let mut spec = ExtrusionSpec::new(directions, fixed_sets);
                if let Some(active) = &e.active {
                    spec.active = active.clone();
                }
                Some(spec)
            }
            None => None,
        };
        let fixed = spec.as_ref().map_or_else(Vec::new, |s| s.fixed_sets.clone());
        let graph = PhGraph::new(vertices.clone(), edges, order, fixed)?;
        let config = Configuration { dim: d, placements };
        let framework = Framework::new(graph, config, spec)?.with_orbits(orbits)?;

        let pin = match &self.pinning {
            Some(p) => {
                let mut pin = PinningSpec::none();
                for (id, c) in &p.coordinates {
                    pin.pinned_coords.insert((lookup(id)?, *c));
                }
                for id in &p.hyperplanes {
                    pin.fully_pinned.insert(lookup(id)?);
                }
                for id in &p.parallel_only {
                    pin.parallel_only.insert(lookup(id)?);
                }
                pin.validate(&framework)?;
                Some(pin)
            }
            None => None,
        };
        Ok((framework, pin))
    }
}

fn parse_label(id: &str, order: usize) -> Result<VertexLabel> {
    if order == 0 {
        return Ok(VertexLabel::plain(id));
    }
    let (base, word) = id
        .rsplit_once(':')
        .ok_or_else(|| doc_error(format!("vertex id `{id}` lacks a `:word` suffix")))?;
    let word = VertexLabel::parse_word(word).ok_or_else(|| doc_error(format!("bad word in vertex id `{id}`")))?;
    Ok(VertexLabel::new(base, word))
}

/// Parses a document and builds its framework.
pub fn read_framework(text: &str) -> Result<(Framework, Option<PinningSpec>)> {
    FrameworkDocument::parse(text)?.to_framework()
}

/// Serialises a framework and optional pinning.
pub fn write_framework(f: &Framework, pin: Option<&PinningSpec>) -> String {
    FrameworkDocument::from_framework(f, pin).to_json()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn round_trip_is_exact() {
        for (name, f, pin) in fixtures::catalogue() {
            let text = write_framework(&f, Some(&pin));
            let (g, p) = read_framework(&text).unwrap();
            assert_eq!(g.coordinates(), f.coordinates(), "{name}");
            assert_eq!(p.unwrap_or_default(), pin, "{name}");
            assert_eq!(write_framework(&g, Some(&pin)), text, "{name}");
        }
    }

    #[test]
    fn syntax_errors_have_positions() {
        let err = FrameworkDocument::parse("{\n  \"dimension\": 2,\n  \"vertices\": [,]\n}").unwrap_err();
        match err {
            Error::Parse { line, column, .. } => {
                assert_eq!(line, 3);
                assert!(column > 0);
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn unknown_edge_endpoint() {
        let text = r#"{"dimension": 2, "vertices": [{"id": "a", "kind": "point", "coordinates": [0, 0]}],
            "edges": [{"ends": ["a", "b"], "kind": "pp"}]}"#;
        assert!(matches!(read_framework(text), Err(Error::UnknownVertex(_))));
    }
}
