use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::SimplicialGraph;
use crate::{Error, Result};

/// On-disk graph payload: `{"vertices": [...], "edges": [[a, b], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String)>,
}

impl GraphFile {
    pub fn into_graph(self) -> Result<SimplicialGraph> {
        SimplicialGraph::new(self.vertices, self.edges)
    }
}

impl From<&SimplicialGraph> for GraphFile {
    fn from(graph: &SimplicialGraph) -> Self {
        GraphFile {
            vertices: graph.names().to_vec(),
            edges: graph
                .edges()
                .map(|(a, b)| (graph.name(a).to_owned(), graph.name(b).to_owned()))
                .collect(),
        }
    }
}

impl SimplicialGraph {
    pub fn from_json_str(text: &str) -> Result<Self> {
        serde_json::from_str::<GraphFile>(text)?.into_graph()
    }

    pub fn from_json_value(value: serde_json::Value) -> Result<Self> {
        serde_json::from_value::<GraphFile>(value)?.into_graph()
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(GraphFile::from(self)).expect("graph payload serializes")
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&GraphFile::from(self)).expect("graph payload serializes")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json_str(&text)
    }
}

fn quote(name: &str) -> String {
    format!("\"{}\"", name.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Undirected DOT rendering with nodes and edges sorted by vertex name.
pub fn export_dot(graph: &SimplicialGraph) -> String {
    let mut order: Vec<usize> = graph.vertices().collect();
    order.sort_by(|&a, &b| graph.name(a).cmp(graph.name(b)));
    let mut edges: Vec<(&str, &str)> = graph
        .edges()
        .map(|(a, b)| {
            let (x, y) = (graph.name(a), graph.name(b));
            if x <= y {
                (x, y)
            } else {
                (y, x)
            }
        })
        .collect();
    edges.sort();

    let mut out = String::from("graph G {\n");
    for v in order {
        let _ = writeln!(out, "  {};", quote(graph.name(v)));
    }
    for (x, y) in edges {
        let _ = writeln!(out, "  {} -- {};", quote(x), quote(y));
    }
    out.push_str("}\n");
    out
}
