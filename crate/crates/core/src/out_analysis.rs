//! Infinite-order generators of `Out(G(Γ))` read off the defining graph.
//!
//! A transvection `w ↦ wv` exists when `lk(w) ⊆ St(v)`; a partial conjugation
//! exists when `St(v)` separates `Γ`. `Out(G(Γ))` is finite iff neither
//! occurs. Inversions and graph automorphisms have finite order and are only
//! counted.

use serde_json::{json, Value};

use crate::graph::{automorphism_count, SimplicialGraph, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Transvection {
    /// The vertex being multiplied (`w`).
    pub target: usize,
    /// The multiplier (`v`).
    pub by: usize,
    pub adjacent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparatingStar {
    pub vertex: usize,
    pub components: Vec<VertexSet>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OutProfile {
    pub transvections: Vec<Transvection>,
    pub partial_conjugation_sites: Vec<SeparatingStar>,
    pub finite: bool,
    pub reconstruction_ok: bool,
    pub connected: bool,
    /// Number of inversion generators (one per vertex).
    pub inversions: usize,
    /// `|Aut(Γ)|`.
    pub graph_automorphisms: u128,
}

/// All ordered pairs `w ≠ v` with `lk(w) ⊆ St(v)`.
pub fn transvection_pairs(graph: &SimplicialGraph) -> Vec<Transvection> {
    let mut out = Vec::new();
    for w in graph.vertices() {
        for v in graph.vertices() {
            if v != w && graph.neighbors(w).iter().all(|&x| x == v || graph.is_adjacent(x, v)) {
                out.push(Transvection {
                    target: w,
                    by: v,
                    adjacent: graph.is_adjacent(v, w),
                });
            }
        }
    }
    out
}

/// Vertices whose closed star leaves at least two components behind.
pub fn separating_stars(graph: &SimplicialGraph) -> Vec<SeparatingStar> {
    graph
        .vertices()
        .filter_map(|v| {
            let components = graph.complement_components(&graph.star(v));
            (components.len() >= 2).then_some(SeparatingStar {
                vertex: v,
                components,
            })
        })
        .collect()
}

/// Is every simplex of `F(Γ)` inside `St(a) ∪ St(b)` for some pair `a, b`?
pub fn covered_by_two_stars(graph: &SimplicialGraph) -> bool {
    let cliques = graph.maximal_cliques();
    let stars: Vec<VertexSet> = graph.vertices().map(|v| graph.star(v)).collect();
    for a in graph.vertices() {
        for b in a..graph.len() {
            if cliques
                .iter()
                .all(|c| c.is_subset(&stars[a]) || c.is_subset(&stars[b]))
            {
                return true;
            }
        }
    }
    false
}

pub fn out_profile(graph: &SimplicialGraph) -> OutProfile {
    let transvections = transvection_pairs(graph);
    let partial_conjugation_sites = separating_stars(graph);
    let finite = transvections.is_empty() && partial_conjugation_sites.is_empty();
    let reconstruction_ok = partial_conjugation_sites.is_empty() && !covered_by_two_stars(graph);
    OutProfile {
        finite,
        reconstruction_ok,
        connected: graph.is_connected(),
        inversions: graph.len(),
        graph_automorphisms: automorphism_count(graph),
        transvections,
        partial_conjugation_sites,
    }
}

impl OutProfile {
    /// JSON rendering with vertex names.
    pub fn to_json(&self, graph: &SimplicialGraph) -> Value {
        json!({
            "finite": self.finite,
            "reconstruction_ok": self.reconstruction_ok,
            "connected": self.connected,
            "inversions": self.inversions,
            "graph_automorphisms": self.graph_automorphisms.to_string(),
            "transvections": self.transvections.iter().map(|t| json!({
                "w": graph.name(t.target),
                "v": graph.name(t.by),
                "adjacent": t.adjacent,
            })).collect::<Vec<_>>(),
            "partial_conjugation_sites": self.partial_conjugation_sites.iter().map(|s| json!({
                "v": graph.name(s.vertex),
                "components": s.components.iter().map(|c| graph.set_names(c)).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn two_pentagons() -> SimplicialGraph {
        // u, v, w as labelled in the classic non-clique stability counterexample.
        SimplicialGraph::new(
            ["u", "n2", "v", "n4", "n5", "n6", "w", "n8", "n9"],
            [
                ("u", "n2"),
                ("n2", "v"),
                ("v", "n4"),
                ("n4", "n5"),
                ("n5", "u"),
                ("u", "n6"),
                ("n6", "w"),
                ("w", "n8"),
                ("n8", "n9"),
                ("n9", "u"),
            ],
        )
        .unwrap()
    }

    fn p3() -> SimplicialGraph {
        SimplicialGraph::new(["a", "b", "c"], [("a", "b"), ("b", "c")]).unwrap()
    }

    #[test]
    fn transvections_of_examples() {
        let g = p3();
        let mut found: Vec<(String, String, bool)> = transvection_pairs(&g)
            .into_iter()
            .map(|t| (g.name(t.target).into(), g.name(t.by).into(), t.adjacent))
            .collect();
        found.sort();
        assert_eq!(
            found,
            [
                ("a".into(), "b".into(), true),
                ("a".into(), "c".into(), false),
                ("c".into(), "a".into(), false),
                ("c".into(), "b".into(), true),
            ]
        );
        assert!(transvection_pairs(&SimplicialGraph::cycle(5)).is_empty());
        assert!(transvection_pairs(&two_pentagons()).is_empty());
    }

    #[test]
    fn separating_star_examples() {
        let g = two_pentagons();
        let sites = separating_stars(&g);
        let names: Vec<&str> = sites.iter().map(|s| g.name(s.vertex)).collect();
        assert_eq!(names, ["u", "n2", "n5", "n6", "n9"]);
        assert!(sites.iter().all(|s| s.components.len() == 2));
        assert!(separating_stars(&SimplicialGraph::cycle(5)).is_empty());
        let p5 = SimplicialGraph::path(5);
        assert!(separating_stars(&p5).iter().any(|s| p5.name(s.vertex) == "3"));
    }

    #[test]
    fn profiles() {
        let c5 = out_profile(&SimplicialGraph::cycle(5));
        assert!(c5.finite && c5.reconstruction_ok && c5.connected);
        assert_eq!(c5.graph_automorphisms, 10);
        assert_eq!(c5.inversions, 5);
        assert!(!out_profile(&p3()).finite);
        let two = out_profile(&two_pentagons());
        assert!(!two.finite);
        assert!(two.transvections.is_empty());
        assert!(!two.partial_conjugation_sites.is_empty());
        let disconnected = out_profile(&SimplicialGraph::numbered(2, &[]).unwrap());
        assert!(!disconnected.connected);
    }

    #[test]
    fn two_star_cover_uses_simplices_not_vertices() {
        // St(1) ∪ St(3) contains every vertex of C5 but misses the edge 4–5.
        assert!(!covered_by_two_stars(&SimplicialGraph::cycle(5)));
        assert!(covered_by_two_stars(&SimplicialGraph::path(4)));
    }
}
