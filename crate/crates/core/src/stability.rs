//! Closed-form stability criteria.
//!
//! The minimal stable subgraph containing `w` is spanned by
//! `{w′ : lk(w) ⊆ St(w′)}`, and a clique is stable iff none of its vertices
//! has its link inside the star of an outside vertex. No criterion is known
//! for non-clique subgraphs, so none is offered.

use serde_json::{json, Value};

use crate::graph::{SimplicialGraph, VertexSet};
use crate::{Error, Result};

fn link_in_star(graph: &SimplicialGraph, w: usize, v: usize) -> bool {
    graph
        .neighbors(w)
        .iter()
        .all(|&x| x == v || graph.is_adjacent(x, v))
}

pub fn minimal_stable_supergraph(graph: &SimplicialGraph, w: usize) -> VertexSet {
    graph
        .vertices()
        .filter(|&v| v == w || link_in_star(graph, w, v))
        .collect()
}

pub fn is_stable_clique(graph: &SimplicialGraph, clique: &VertexSet) -> Result<bool> {
    if !graph.is_clique(clique) {
        return Err(Error::input(format!(
            "{:?} is not a clique; the stability criterion only applies to cliques",
            graph.set_names(clique)
        )));
    }
    Ok(!clique.iter().any(|&w| {
        graph
            .vertices()
            .filter(|v| !clique.contains(v))
            .any(|v| link_in_star(graph, w, v))
    }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Dichotomy {
    /// `Γ_w` is a clique; `St(w)` is then stable.
    Clique { gamma_w: VertexSet, star_stable: VertexSet },
    /// `Γ_w` is not a clique; `Γ1 = lk(w)` and `Γ2 = Γ1^⊥` with `Γ2`
    /// disconnected.
    Split { gamma_w: VertexSet, gamma1: VertexSet, gamma2: VertexSet },
}

pub fn vertex_dichotomy(graph: &SimplicialGraph, w: usize) -> Dichotomy {
    let gamma_w = minimal_stable_supergraph(graph, w);
    if graph.is_clique(&gamma_w) {
        Dichotomy::Clique {
            gamma_w,
            star_stable: graph.star(w),
        }
    } else {
        let gamma1 = graph.link(w);
        let gamma2 = graph.orthogonal_complement(&gamma1);
        Dichotomy::Split {
            gamma_w,
            gamma1,
            gamma2,
        }
    }
}

impl Dichotomy {
    pub fn gamma_w(&self) -> &VertexSet {
        match self {
            Dichotomy::Clique { gamma_w, .. } | Dichotomy::Split { gamma_w, .. } => gamma_w,
        }
    }

    pub fn to_json(&self, graph: &SimplicialGraph) -> Value {
        match self {
            Dichotomy::Clique { star_stable, .. } => json!({
                "case": "clique",
                "star_stable": graph.set_names(star_stable),
            }),
            Dichotomy::Split { gamma1, gamma2, .. } => json!({
                "case": "split",
                "gamma1": graph.set_names(gamma1),
                "gamma2": graph.set_names(gamma2),
                "gamma2_components": graph
                    .components_within(gamma2)
                    .iter()
                    .map(|c| graph.set_names(c))
                    .collect::<Vec<_>>(),
            }),
        }
    }
}
