//! Wire formats: graph and system JSON, grid-labeling JSON, DOT export, and
//! the content digests that key certificates and evidence caches.
//!
//! Exports are canonical: edges sorted lexicographically, struct fields in
//! fixed order, so identical objects serialise to identical bytes.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::graph::{Graph, GraphError, VertexSet};
use crate::moves::MoveSystem;
use crate::polytope::cell600::{class_name, GridLabeling, GridLayout};

#[derive(Debug, Error)]
pub enum IoError {
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("invalid system file: {0}")]
    InvalidSystem(String),
}

/// Graph wire format: `{"n": .., "edges": [[u, v], ..], "labels": [..]?}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl GraphJson {
    pub fn from_graph(g: &Graph) -> GraphJson {
        GraphJson {
            n: g.vertex_count(),
            edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
            labels: g.labels().map(|l| l.to_vec()),
        }
    }

    pub fn into_graph(self) -> Result<Graph, IoError> {
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|&[u, v]| (u, v)).collect();
        let mut g = Graph::build(self.n, &edges)?;
        if let Some(labels) = self.labels {
            if labels.len() != self.n {
                return Err(IoError::InvalidSystem(format!(
                    "{} labels for {} vertices",
                    labels.len(),
                    self.n
                )));
            }
            g = g.with_labels(labels);
        }
        Ok(g)
    }
}

pub fn graph_to_json(g: &Graph) -> String {
    serde_json::to_string_pretty(&GraphJson::from_graph(g)).expect("graph serialises")
}

pub fn graph_from_json(text: &str) -> Result<Graph, IoError> {
    serde_json::from_str::<GraphJson>(text)?.into_graph()
}

/// System wire format: distinct moves, per-vertex class assignment, start
/// state.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SystemJson {
    pub moves: Vec<Vec<usize>>,
    pub assignment: Vec<usize>,
    pub start: Vec<usize>,
}

impl SystemJson {
    pub fn from_system(ms: &MoveSystem, start: VertexSet) -> SystemJson {
        let distinct = ms.distinct_moves();
        let assignment = ms
            .moves()
            .iter()
            .map(|m| {
                distinct
                    .iter()
                    .position(|d| d == m)
                    .expect("move is in distinct list")
            })
            .collect();
        SystemJson {
            moves: distinct.iter().map(|m| m.to_vec()).collect(),
            assignment,
            start: start.to_vec(),
        }
    }

    pub fn into_system(self) -> Result<(MoveSystem, VertexSet), IoError> {
        let n = self.assignment.len();
        if n == 0 || n > crate::graph::MAX_VERTICES {
            return Err(IoError::InvalidSystem(format!(
                "assignment length {n} out of range"
            )));
        }
        let classes: Vec<VertexSet> = self
            .moves
            .iter()
            .map(|m| {
                if m.iter().any(|&v| v >= n) {
                    Err(IoError::InvalidSystem(
                        "move vertex out of range".to_string(),
                    ))
                } else {
                    Ok(m.iter().copied().collect())
                }
            })
            .collect::<Result<_, _>>()?;
        let moves: Vec<VertexSet> = self
            .assignment
            .iter()
            .map(|&class| {
                classes.get(class).copied().ok_or_else(|| {
                    IoError::InvalidSystem(format!("class index {class} out of range"))
                })
            })
            .collect::<Result<_, _>>()?;
        if self.start.iter().any(|&v| v >= n) {
            return Err(IoError::InvalidSystem(
                "start vertex out of range".to_string(),
            ));
        }
        Ok((MoveSystem::new(moves), self.start.iter().copied().collect()))
    }
}

pub fn system_to_json(ms: &MoveSystem, start: VertexSet) -> String {
    serde_json::to_string_pretty(&SystemJson::from_system(ms, start)).expect("system serialises")
}

pub fn system_from_json(text: &str) -> Result<(MoveSystem, VertexSet), IoError> {
    serde_json::from_str::<SystemJson>(text)?.into_system()
}

/// Grid-labeling wire format for the 600-cell torus model.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LabelingJson {
    /// `[row, column, vertex id]` triples.
    pub ordinary: Vec<[usize; 3]>,
    /// `[position, vertex id]` pairs around the even hovering decagon.
    pub even_hovering: Vec<[usize; 2]>,
    pub odd_hovering: Vec<[usize; 2]>,
    /// Class name of every vertex, e.g. `"3"` or `"7'"`.
    pub label: Vec<String>,
}

impl LabelingJson {
    pub fn new(layout: &GridLayout, labeling: &GridLabeling) -> LabelingJson {
        let mut ordinary = Vec::with_capacity(100);
        for r in 0..10 {
            for c in 0..10 {
                ordinary.push([r, c, layout.ordinary(r, c)]);
            }
        }
        LabelingJson {
            ordinary,
            even_hovering: (0..10).map(|k| [k, layout.even_hovering(k)]).collect(),
            odd_hovering: (0..10).map(|k| [k, layout.odd_hovering(k)]).collect(),
            label: labeling.label.iter().map(|&c| class_name(c)).collect(),
        }
    }
}

/// One line of an orbit dump.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OrbitLine {
    pub coords: String,
    pub state: Vec<usize>,
    pub legal: bool,
}

/// DOT export for visual inspection; vertices carry their labels when the
/// graph has any.
pub fn graph_to_dot(g: &Graph) -> String {
    let mut out = String::from("graph {\n");
    for v in 0..g.vertex_count() {
        match g.labels() {
            Some(labels) => {
                out.push_str(&format!("  {v} [label=\"{}\"];\n", labels[v]));
            }
            None => out.push_str(&format!("  {v};\n")),
        }
    }
    for (u, v) in g.edges() {
        out.push_str(&format!("  {u} -- {v};\n"));
    }
    out.push_str("}\n");
    out
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Content digest of a graph's canonical JSON.
pub fn graph_digest(g: &Graph) -> String {
    sha256_hex(graph_to_json(g).as_bytes())
}

/// Content digest of a system's canonical JSON (moves plus start state).
pub fn system_digest(ms: &MoveSystem, start: VertexSet) -> String {
    sha256_hex(system_to_json(ms, start).as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{cell24, cell600};

    #[test]
    fn graph_json_round_trip() {
        let model = cell24::builtin();
        let text = graph_to_json(&model.graph);
        let back = graph_from_json(&text).unwrap();
        assert_eq!(back, model.graph);
        // Canonical: serialising again is byte-identical.
        assert_eq!(graph_to_json(&back), text);
    }

    #[test]
    fn system_json_round_trip() {
        let model = cell600::builtin();
        let text = system_to_json(&model.system, model.start);
        let (ms, start) = system_from_json(&text).unwrap();
        assert_eq!(ms, model.system);
        assert_eq!(start, model.start);
    }

    #[test]
    fn bad_system_files_are_rejected() {
        let missing: Result<SystemJson, _> = serde_json::from_str("{}");
        assert!(missing.is_err());
        let bad = SystemJson {
            moves: vec![vec![0], vec![9]],
            assignment: vec![0, 1, 0],
            start: vec![0],
        };
        assert!(bad.into_system().is_err());
        let bad_class = SystemJson {
            moves: vec![vec![0]],
            assignment: vec![0, 7],
            start: vec![],
        };
        assert!(bad_class.into_system().is_err());
    }

    #[test]
    fn dot_export_is_deterministic_and_labelled() {
        let g = Graph::build(2, &[(0, 1)])
            .unwrap()
            .with_labels(vec!["a".into(), "b".into()]);
        let dot = graph_to_dot(&g);
        assert_eq!(
            dot,
            "graph {\n  0 [label=\"a\"];\n  1 [label=\"b\"];\n  0 -- 1;\n}\n"
        );
    }

    #[test]
    fn digests_are_stable_and_input_sensitive() {
        let model = cell24::builtin();
        let d1 = graph_digest(&model.graph);
        assert_eq!(d1, graph_digest(&model.graph));
        assert_eq!(d1.len(), 64);
        let other = Graph::build(2, &[(0, 1)]).unwrap();
        assert_ne!(d1, graph_digest(&other));
        let s1 = system_digest(&model.system, model.start);
        let s2 = system_digest(&model.system, model.start.complement(24));
        assert_ne!(s1, s2);
    }

    #[test]
    fn labeling_json_shape() {
        let model = cell600::builtin();
        let json = LabelingJson::new(&model.layout, &model.labeling);
        assert_eq!(json.ordinary.len(), 100);
        assert_eq!(json.even_hovering.len(), 10);
        assert_eq!(json.odd_hovering.len(), 10);
        assert_eq!(json.label.len(), 120);
        assert!(json.label.iter().any(|l| l.ends_with('\'')));
        let text = serde_json::to_string(&json).unwrap();
        let back: LabelingJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.label, json.label);
    }
}
