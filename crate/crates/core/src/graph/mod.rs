//! Finite simple graphs with the local operators used throughout the crate.
//!
//! Vertices are addressed by dense indices `0..len()`; every vertex also has a
//! string name, and the index order is the generator order used by the word
//! engine. The flag complex is never materialised: its simplices are the
//! cliques of the graph and are queried on demand.

mod canon;
mod io;

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::{Error, Result};

pub use canon::{
    automorphism_count, automorphisms, canonical_form, canonical_form_with_limit,
    find_isomorphism, induced_copy_cover, CanonicalForm,
};
pub use io::{export_dot, GraphFile};

pub type VertexSet = BTreeSet<usize>;

#[derive(Clone, Debug)]
pub struct SimplicialGraph {
    names: Vec<String>,
    index: HashMap<String, usize>,
    adjacency: Vec<Vec<usize>>,
}

impl PartialEq for SimplicialGraph {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.adjacency == other.adjacency
    }
}

impl Eq for SimplicialGraph {}

impl SimplicialGraph {
    /// Builds a graph from vertex names and name pairs, rejecting loops,
    /// duplicate edges, duplicate vertices and unknown endpoints.
    pub fn new<V, E, S, T>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator<Item = S>,
        S: Into<String>,
        E: IntoIterator<Item = (T, T)>,
        T: AsRef<str>,
    {
        let names: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut graph = Self::edgeless(names)?;
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            let i = graph.vertex(a)?;
            let j = graph.vertex(b)?;
            graph.add_edge(i, j).map_err(|e| match e {
                Error::Input(msg) => Error::input(format!("edge [{a:?}, {b:?}]: {msg}")),
                other => other,
            })?;
        }
        Ok(graph)
    }

    /// Builds a graph from names and index pairs.
    pub fn from_indexed<I>(names: Vec<String>, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut graph = Self::edgeless(names)?;
        for (i, j) in edges {
            if i >= graph.len() || j >= graph.len() {
                return Err(Error::input(format!("edge ({i}, {j}) out of range")));
            }
            graph.add_edge(i, j)?;
        }
        Ok(graph)
    }

    /// Like [`from_indexed`](Self::from_indexed) but silently merges repeated
    /// edges. Loops are still rejected.
    pub(crate) fn from_edge_set<I>(names: Vec<String>, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let set: BTreeSet<(usize, usize)> = edges
            .into_iter()
            .map(|(i, j)| (i.min(j), i.max(j)))
            .collect();
        Self::from_indexed(names, set)
    }

    fn edgeless(names: Vec<String>) -> Result<Self> {
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::input(format!("duplicate vertex {name:?}")));
            }
        }
        let adjacency = vec![Vec::new(); names.len()];
        Ok(SimplicialGraph {
            names,
            index,
            adjacency,
        })
    }

    fn add_edge(&mut self, i: usize, j: usize) -> Result<()> {
        if i == j {
            return Err(Error::input("loop"));
        }
        match self.adjacency[i].binary_search(&j) {
            Ok(_) => Err(Error::input("duplicate edge")),
            Err(pos) => {
                self.adjacency[i].insert(pos, j);
                let pos = self.adjacency[j].binary_search(&i).unwrap_err();
                self.adjacency[j].insert(pos, i);
                Ok(())
            }
        }
    }

    /// Small numeric fixtures: vertices named `"1"..="n"`.
    pub fn numbered(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let names = (1..=n).map(|i| i.to_string()).collect();
        Self::from_indexed(names, edges.iter().map(|&(a, b)| (a - 1, b - 1)))
    }

    /// Cycle on `n ≥ 3` vertices named `1..=n`.
    pub fn cycle(n: usize) -> Self {
        let edges: Vec<_> = (1..=n).map(|i| (i, i % n + 1)).collect();
        Self::numbered(n, &edges).expect("cycle is simple")
    }

    /// Path on `n` vertices named `1..=n`.
    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
        Self::numbered(n, &edges).expect("path is simple")
    }

    /// Complete graph on `n` vertices named `1..=n`.
    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                edges.push((i, j));
            }
        }
        Self::numbered(n, &edges).expect("complete graph is simple")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// Index of the vertex called `name`, or an input error.
    pub fn vertex(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::input(format!("unknown vertex {name:?}")))
    }

    /// Resolves a list of names into a vertex set.
    pub fn vertex_set<S: AsRef<str>>(&self, names: &[S]) -> Result<VertexSet> {
        names.iter().map(|n| self.vertex(n.as_ref())).collect()
    }

    pub fn set_names(&self, set: &VertexSet) -> Vec<String> {
        set.iter().map(|&v| self.names[v].clone()).collect()
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    pub fn all_vertices(&self) -> VertexSet {
        self.vertices().collect()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges as `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(i, nbrs)| nbrs.iter().filter(move |&&j| j > i).map(move |&j| (i, j)))
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn link(&self, v: usize) -> VertexSet {
        self.adjacency[v].iter().copied().collect()
    }

    pub fn star(&self, v: usize) -> VertexSet {
        let mut star = self.link(v);
        star.insert(v);
        star
    }

    /// `(lk(v), St(v))` for the vertex named `v`.
    pub fn neighborhoods(&self, v: &str) -> Result<(VertexSet, VertexSet)> {
        let v = self.vertex(v)?;
        Ok((self.link(v), self.star(v)))
    }

    /// Vertices adjacent to every member of `set`; the empty set maps to `V(Γ)`.
    pub fn orthogonal_complement(&self, set: &VertexSet) -> VertexSet {
        self.vertices()
            .filter(|&w| set.iter().all(|&v| self.is_adjacent(w, v)))
            .collect()
    }

    pub fn is_clique(&self, set: &VertexSet) -> bool {
        let members: Vec<usize> = set.iter().copied().collect();
        members
            .iter()
            .enumerate()
            .all(|(k, &u)| members[k + 1..].iter().all(|&v| self.is_adjacent(u, v)))
    }

    /// Full subgraph spanned by `set`, keeping names and relative order.
    pub fn induced(&self, set: &VertexSet) -> SimplicialGraph {
        let order: Vec<usize> = set.iter().copied().collect();
        let position: HashMap<usize, usize> =
            order.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        let names = order.iter().map(|&v| self.names[v].clone()).collect();
        let edges = self
            .edges()
            .filter_map(|(a, b)| Some((*position.get(&a)?, *position.get(&b)?)));
        SimplicialGraph::from_indexed(names, edges).expect("induced subgraph is simple")
    }

    /// Connected components of the full subgraph spanned by `set`, each
    /// component ordered by its least vertex.
    pub fn components_within(&self, set: &VertexSet) -> Vec<VertexSet> {
        let mut seen = VertexSet::new();
        let mut components = Vec::new();
        for &start in set {
            if !seen.insert(start) {
                continue;
            }
            let mut component = VertexSet::from([start]);
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in self.neighbors(u) {
                    if set.contains(&w) && seen.insert(w) {
                        component.insert(w);
                        queue.push_back(w);
                    }
                }
            }
            components.push(component);
        }
        components
    }

    /// Connected components of `Γ ∖ removed`.
    pub fn complement_components(&self, removed: &VertexSet) -> Vec<VertexSet> {
        let rest: VertexSet = self.vertices().filter(|v| !removed.contains(v)).collect();
        self.components_within(&rest)
    }

    pub fn is_connected(&self) -> bool {
        self.components_within(&self.all_vertices()).len() <= 1
    }

    /// Maximal cliques (Bron–Kerbosch with pivoting), sorted.
    pub fn maximal_cliques(&self) -> Vec<VertexSet> {
        let mut out = Vec::new();
        self.bron_kerbosch(
            &mut VertexSet::new(),
            self.all_vertices(),
            VertexSet::new(),
            &mut out,
        );
        out.sort();
        out
    }

    fn bron_kerbosch(
        &self,
        current: &mut VertexSet,
        mut candidates: VertexSet,
        mut excluded: VertexSet,
        out: &mut Vec<VertexSet>,
    ) {
        if candidates.is_empty() {
            if excluded.is_empty() {
                out.push(current.clone());
            }
            return;
        }
        let pivot = *candidates
            .union(&excluded)
            .max_by_key(|&&u| {
                self.neighbors(u)
                    .iter()
                    .filter(|w| candidates.contains(w))
                    .count()
            })
            .expect("nonempty");
        let branch: Vec<usize> = candidates
            .iter()
            .copied()
            .filter(|&v| !self.is_adjacent(pivot, v))
            .collect();
        for v in branch {
            let nbrs = self.link(v);
            current.insert(v);
            self.bron_kerbosch(
                current,
                candidates.intersection(&nbrs).copied().collect(),
                excluded.intersection(&nbrs).copied().collect(),
                out,
            );
            current.remove(&v);
            candidates.remove(&v);
            excluded.insert(v);
        }
    }

    /// Size of the largest clique, i.e. `dim F(Γ) + 1`.
    pub fn clique_number(&self) -> usize {
        self.maximal_cliques().iter().map(BTreeSet::len).max().unwrap_or(0)
    }

    /// Canonical join decomposition: the factors are the components of the
    /// complement graph; singleton components (cone vertices) are collected
    /// into the clique factor.
    pub fn join_decompose(&self) -> JoinDecomposition {
        let mut seen = vec![false; self.len()];
        let mut clique_factor = VertexSet::new();
        let mut factors = Vec::new();
        for start in self.vertices() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut component = VertexSet::from([start]);
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for w in self.vertices() {
                    if w != u && !seen[w] && !self.is_adjacent(u, w) {
                        seen[w] = true;
                        component.insert(w);
                        queue.push_back(w);
                    }
                }
            }
            if component.len() == 1 {
                clique_factor.extend(component);
            } else {
                factors.push(component);
            }
        }
        JoinDecomposition {
            clique_factor,
            factors,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JoinDecomposition {
    /// Maximal clique join factor (possibly empty).
    pub clique_factor: VertexSet,
    /// Irreducible non-clique factors, ordered by least vertex.
    pub factors: Vec<VertexSet>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(graph: &SimplicialGraph, names: &[&str]) -> VertexSet {
        graph.vertex_set(names).unwrap()
    }

    fn p3() -> SimplicialGraph {
        SimplicialGraph::new(["a", "b", "c"], [("a", "b"), ("b", "c")]).unwrap()
    }

    #[test]
    fn neighborhoods_of_cycle_path_and_point() {
        let c5 = SimplicialGraph::cycle(5);
        let (lk, st) = c5.neighborhoods("1").unwrap();
        assert_eq!(lk, set(&c5, &["2", "5"]));
        assert_eq!(st, set(&c5, &["1", "2", "5"]));

        let p3 = p3();
        let (lk, st) = p3.neighborhoods("b").unwrap();
        assert_eq!(lk, set(&p3, &["a", "c"]));
        assert_eq!(st, set(&p3, &["a", "b", "c"]));

        let point = SimplicialGraph::new(["x"], Vec::<(&str, &str)>::new()).unwrap();
        let (lk, st) = point.neighborhoods("x").unwrap();
        assert!(lk.is_empty());
        assert_eq!(st, set(&point, &["x"]));

        assert!(matches!(c5.neighborhoods("9"), Err(Error::Input(_))));
    }

    #[test]
    fn orthogonal_complement_examples() {
        let c5 = SimplicialGraph::cycle(5);
        assert_eq!(
            c5.orthogonal_complement(&set(&c5, &["1"])),
            set(&c5, &["2", "5"])
        );
        assert_eq!(
            c5.orthogonal_complement(&set(&c5, &["2", "5"])),
            set(&c5, &["1"])
        );
        assert_eq!(c5.orthogonal_complement(&VertexSet::new()), c5.all_vertices());
    }

    #[test]
    fn join_decompositions() {
        let c4 = SimplicialGraph::cycle(4);
        let d = c4.join_decompose();
        assert!(d.clique_factor.is_empty());
        assert_eq!(d.factors, vec![set(&c4, &["1", "3"]), set(&c4, &["2", "4"])]);

        let c5 = SimplicialGraph::cycle(5);
        let d = c5.join_decompose();
        assert!(d.clique_factor.is_empty());
        assert_eq!(d.factors, vec![c5.all_vertices()]);

        let k3 = SimplicialGraph::complete(3);
        let d = k3.join_decompose();
        assert_eq!(d.clique_factor, k3.all_vertices());
        assert!(d.factors.is_empty());
    }

    #[test]
    fn complement_component_examples() {
        let p5 = SimplicialGraph::new(
            ["a", "b", "c", "d", "e"],
            [("a", "b"), ("b", "c"), ("c", "d"), ("d", "e")],
        )
        .unwrap();
        let st_c = p5.star(p5.vertex("c").unwrap());
        assert_eq!(
            p5.complement_components(&st_c),
            vec![set(&p5, &["a"]), set(&p5, &["e"])]
        );

        let c5 = SimplicialGraph::cycle(5);
        assert_eq!(
            c5.complement_components(&c5.star(0)),
            vec![set(&c5, &["3", "4"])]
        );
        assert_eq!(
            c5.complement_components(&VertexSet::new()),
            vec![c5.all_vertices()]
        );
    }

    #[test]
    fn rejects_loops_and_duplicates_naming_the_edge() {
        let err = SimplicialGraph::new(["1", "2"], [("1", "1")]).unwrap_err();
        assert!(err.to_string().contains("[\"1\", \"1\"]"), "{err}");
        let err = SimplicialGraph::new(["1", "2"], [("1", "2"), ("2", "1")]).unwrap_err();
        assert!(err.to_string().contains("duplicate edge"), "{err}");
        assert!(SimplicialGraph::new(["1", "1"], Vec::<(&str, &str)>::new()).is_err());
        assert!(SimplicialGraph::new(["1"], [("1", "7")]).is_err());
    }

    #[test]
    fn cliques_of_small_graphs() {
        let c5 = SimplicialGraph::cycle(5);
        assert_eq!(c5.maximal_cliques().len(), 5);
        assert_eq!(c5.clique_number(), 2);
        assert_eq!(SimplicialGraph::complete(4).clique_number(), 4);
        assert!(c5.is_clique(&set(&c5, &["1", "2"])));
        assert!(!c5.is_clique(&set(&c5, &["1", "3"])));
    }
}
