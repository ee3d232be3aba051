//! Finite windows on the extension graph `Γ^e`.
//!
//! A vertex is a parallelism class of standard geodesics, encoded as the
//! generator label together with the minimal representative of the coset
//! `rep·G(St(label))`. Two classes span an edge iff their labels commute and
//! the classes share a conjugator, i.e. `rep_u⁻¹·rep_v ∈ G(St(u))·G(St(v))`.
//! The projection to `Γ` is the `label` field; higher simplices are the
//! cliques of these graphs and are never built.

use std::collections::{BTreeSet, HashMap};

use crate::graph::SimplicialGraph;
use crate::word::{Element, Raag};
use crate::{Error, Execution, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtVertex {
    pub label: usize,
    pub rep: Element,
}

/// A finite graph whose vertices are extension-graph classes, sorted by
/// `(label, rep)`. The inner [`SimplicialGraph`] names vertices `label@rep`.
#[derive(Clone, Debug)]
pub struct ExtGraph {
    vertices: Vec<ExtVertex>,
    index: HashMap<ExtVertex, usize>,
    graph: SimplicialGraph,
}

impl PartialEq for ExtGraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.graph == other.graph
    }
}

impl Eq for ExtGraph {}

impl ExtGraph {
    pub fn vertices(&self) -> &[ExtVertex] {
        &self.vertices
    }

    pub fn graph(&self) -> &SimplicialGraph {
        &self.graph
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn index_of(&self, v: &ExtVertex) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn contains(&self, v: &ExtVertex) -> bool {
        self.index.contains_key(v)
    }

    pub fn vertex_set(&self) -> BTreeSet<ExtVertex> {
        self.vertices.iter().cloned().collect()
    }

    /// Edges as pairs of classes.
    pub fn edge_pairs(&self) -> BTreeSet<(ExtVertex, ExtVertex)> {
        self.graph
            .edges()
            .map(|(a, b)| (self.vertices[a].clone(), self.vertices[b].clone()))
            .collect()
    }

    pub(crate) fn from_parts(
        raag: &Raag,
        vertices: BTreeSet<ExtVertex>,
        edges: impl IntoIterator<Item = (ExtVertex, ExtVertex)>,
    ) -> Result<Self> {
        let vertices: Vec<ExtVertex> = vertices.into_iter().collect();
        let index: HashMap<ExtVertex, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i))
            .collect();
        let names = vertices.iter().map(|v| raag.ext_name(v)).collect();
        let mut indexed = Vec::new();
        for (a, b) in edges {
            let (Some(&i), Some(&j)) = (index.get(&a), index.get(&b)) else {
                return Err(Error::input("edge endpoint outside the vertex set"));
            };
            indexed.push((i, j));
        }
        let graph = SimplicialGraph::from_edge_set(names, indexed)?;
        Ok(ExtGraph {
            vertices,
            index,
            graph,
        })
    }
}

/// A truncation of `Γ^e` to classes whose minimal representative has word
/// length at most `radius`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtTruncation {
    pub radius: usize,
    pub graph: ExtGraph,
}

impl Raag {
    /// `label@rep`, with `rep` in word-literal syntax.
    pub fn ext_name(&self, v: &ExtVertex) -> String {
        format!("{}@{}", self.graph().name(v.label), self.format(&v.rep))
    }

    /// Parses `label@rep`; any representative of the coset is accepted.
    pub fn parse_ext_vertex(&self, text: &str) -> Result<ExtVertex> {
        let (label, rep) = text
            .split_once('@')
            .ok_or_else(|| Error::input(format!("expected label@rep, got {text:?}")))?;
        let label = self.graph().vertex(label.trim())?;
        let rep = self.word(rep)?;
        Ok(self.make_vertex(&rep, label))
    }

    /// Adjacency in the extension graph (false for equal classes).
    pub fn adjacent(&self, u: &ExtVertex, v: &ExtVertex) -> bool {
        if u == v || !self.commute(u.label, v.label) {
            return false;
        }
        let between = self.difference(&u.rep, &v.rep);
        self.in_star_product(&between, u.label, v.label)
    }

    /// `{(s, coset_rep(g, s)) : s ∈ V(Γ)}`; its induced graph is a copy of `Γ`.
    pub fn local_complex(&self, g: &Element) -> BTreeSet<ExtVertex> {
        self.graph()
            .vertices()
            .map(|s| self.make_vertex(g, s))
            .collect()
    }

    /// The full subgraph of `Γ^e` on the given classes.
    pub fn ext_graph(&self, vertices: BTreeSet<ExtVertex>, exec: Execution) -> ExtGraph {
        let list: Vec<ExtVertex> = vertices.iter().cloned().collect();
        let indices: Vec<usize> = (0..list.len()).collect();
        let adjacency = exec.map(&indices, |&i| {
            (i + 1..list.len())
                .filter(|&j| self.adjacent(&list[i], &list[j]))
                .map(|j| (list[i].clone(), list[j].clone()))
                .collect::<Vec<_>>()
        });
        ExtGraph::from_parts(self, vertices, adjacency.into_iter().flatten())
            .expect("classes from a common set")
    }

    /// Classes of geodesics through any of `elements`, with extension-graph
    /// adjacency: the defining graph of their support.
    pub fn support(&self, elements: &[Element]) -> ExtGraph {
        self.support_with(elements, Execution::default())
    }

    pub fn support_with(&self, elements: &[Element], exec: Execution) -> ExtGraph {
        let locals = exec.map(elements, |g| self.local_complex(g));
        let vertices: BTreeSet<ExtVertex> = locals.into_iter().flatten().collect();
        self.ext_graph(vertices, exec)
    }

    pub fn truncation(&self, radius: usize) -> Result<ExtTruncation> {
        self.truncation_with(radius, Execution::default())
    }

    pub fn truncation_with(&self, radius: usize, exec: Execution) -> Result<ExtTruncation> {
        let ball = self.cayley_ball_with(radius, exec)?;
        let graph = self.support_with(&ball, exec);
        Ok(ExtTruncation { radius, graph })
    }
}
