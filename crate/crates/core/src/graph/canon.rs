//! Canonical labelling and isomorphism search by colour refinement with
//! individualisation and backtracking.
//!
//! The canonical form is the lexicographically least upper-triangle adjacency
//! code over all leaves of the search tree. Subtrees are pruned when the
//! branching vertices are twins or lie in one orbit of the automorphisms
//! discovered so far (those fixing the individualised prefix).

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{SimplicialGraph, VertexSet};
use crate::{Error, Limits, Result};

/// Isomorphism-invariant encoding of an unlabelled graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub order: usize,
    pub code: Vec<u64>,
}

impl CanonicalForm {
    pub fn to_hex(&self) -> String {
        let mut bytes = (self.order as u32).to_be_bytes().to_vec();
        for word in &self.code {
            bytes.extend_from_slice(&word.to_be_bytes());
        }
        hex::encode(bytes)
    }

    pub fn edge_count(&self) -> usize {
        self.code.iter().map(|w| w.count_ones() as usize).sum()
    }
}

pub fn canonical_form(graph: &SimplicialGraph) -> Result<CanonicalForm> {
    canonical_form_with_limit(graph, Limits::default().max_canonical_vertices)
}

pub fn canonical_form_with_limit(
    graph: &SimplicialGraph,
    max_vertices: usize,
) -> Result<CanonicalForm> {
    if graph.len() > max_vertices {
        return Err(Error::resource(format!(
            "canonical labelling is limited to {max_vertices} vertices, graph has {}",
            graph.len()
        )));
    }
    let adjacency: Vec<Vec<usize>> = graph.vertices().map(|v| graph.neighbors(v).to_vec()).collect();
    let mut search = CanonSearch {
        graph,
        adjacency: &adjacency,
        best: None,
        automorphisms: Vec::new(),
    };
    let mut prefix = Vec::new();
    search.visit(vec![0; graph.len()], &mut prefix);
    let (code, _) = search.best.unwrap_or_default();
    Ok(CanonicalForm {
        order: graph.len(),
        code,
    })
}

/// Stable partition refinement; colours are re-ranked by signature so the
/// result depends only on the input colouring, never on vertex numbering.
fn refine(adjacency: &[Vec<usize>], colors: &mut Vec<u32>) {
    let mut classes = count_classes(colors);
    loop {
        let signatures: Vec<(u32, Vec<u32>)> = (0..colors.len())
            .map(|v| {
                let mut nbrs: Vec<u32> = adjacency[v].iter().map(|&w| colors[w]).collect();
                nbrs.sort_unstable();
                (colors[v], nbrs)
            })
            .collect();
        let mut distinct: Vec<&(u32, Vec<u32>)> = signatures.iter().collect();
        distinct.sort();
        distinct.dedup();
        let rank: HashMap<&(u32, Vec<u32>), u32> = distinct
            .iter()
            .enumerate()
            .map(|(k, s)| (*s, k as u32))
            .collect();
        let next: Vec<u32> = signatures.iter().map(|s| rank[s]).collect();
        let next_classes = distinct.len();
        *colors = next;
        if next_classes == classes {
            return;
        }
        classes = next_classes;
    }
}

fn count_classes(colors: &[u32]) -> usize {
    let mut sorted = colors.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    sorted.len()
}

fn individualize(colors: &[u32], chosen: &[usize]) -> Vec<u32> {
    let mut next: Vec<u32> = colors.iter().map(|&c| 2 * c + 1).collect();
    for &v in chosen {
        next[v] -= 1;
    }
    next
}

/// Smallest colour whose class has more than one member, with its members.
fn target_cell(colors: &[u32]) -> Option<Vec<usize>> {
    let mut sizes: HashMap<u32, usize> = HashMap::new();
    for &c in colors {
        *sizes.entry(c).or_default() += 1;
    }
    let color = sizes
        .iter()
        .filter(|(_, &size)| size > 1)
        .map(|(&c, _)| c)
        .min()?;
    Some((0..colors.len()).filter(|&v| colors[v] == color).collect())
}

fn are_twins(graph: &SimplicialGraph, u: usize, w: usize) -> bool {
    let strip = |x: usize, other: usize| -> Vec<usize> {
        graph.neighbors(x).iter().copied().filter(|&y| y != other).collect()
    };
    strip(u, w) == strip(w, u)
}

struct CanonSearch<'a> {
    graph: &'a SimplicialGraph,
    adjacency: &'a [Vec<usize>],
    /// Best code so far and its labelling (vertex -> canonical position).
    best: Option<(Vec<u64>, Vec<usize>)>,
    automorphisms: Vec<Vec<usize>>,
}

impl CanonSearch<'_> {
    fn visit(&mut self, mut colors: Vec<u32>, prefix: &mut Vec<usize>) {
        refine(self.adjacency, &mut colors);
        let Some(cell) = target_cell(&colors) else {
            self.leaf(&colors);
            return;
        };
        let mut explored: Vec<usize> = Vec::new();
        for &u in &cell {
            if explored.iter().any(|&e| are_twins(self.graph, e, u)) {
                continue;
            }
            if !explored.is_empty() && self.same_orbit(prefix, &explored, u) {
                continue;
            }
            prefix.push(u);
            self.visit(individualize(&colors, &[u]), prefix);
            prefix.pop();
            explored.push(u);
        }
    }

    fn leaf(&mut self, colors: &[u32]) {
        let labelling: Vec<usize> = colors.iter().map(|&c| c as usize).collect();
        let code = encode(self.graph, &labelling);
        match &self.best {
            None => self.best = Some((code, labelling)),
            Some((best, best_labelling)) => {
                if code < *best {
                    self.best = Some((code, labelling));
                } else if code == *best {
                    let mut inverse = vec![0; labelling.len()];
                    for (v, &pos) in best_labelling.iter().enumerate() {
                        inverse[pos] = v;
                    }
                    let automorphism: Vec<usize> =
                        labelling.iter().map(|&pos| inverse[pos]).collect();
                    self.automorphisms.push(automorphism);
                }
            }
        }
    }

    /// Is `u` in the orbit of an explored vertex under the known automorphisms
    /// fixing `prefix` pointwise?
    fn same_orbit(&self, prefix: &[usize], explored: &[usize], u: usize) -> bool {
        let n = self.graph.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for sigma in &self.automorphisms {
            if prefix.iter().any(|&p| sigma[p] != p) {
                continue;
            }
            for (v, &image) in sigma.iter().enumerate().take(n) {
                let (a, b) = (find(&mut parent, v), find(&mut parent, image));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        let root = find(&mut parent, u);
        explored.iter().any(|&e| find(&mut parent, e) == root)
    }
}

fn encode(graph: &SimplicialGraph, labelling: &[usize]) -> Vec<u64> {
    let n = graph.len();
    let mut inverse = vec![0; n];
    for (v, &pos) in labelling.iter().enumerate() {
        inverse[pos] = v;
    }
    let bits = n * n.saturating_sub(1) / 2;
    let mut code = vec![0u64; bits.div_ceil(64)];
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            if graph.is_adjacent(inverse[i], inverse[j]) {
                code[k / 64] |= 1u64 << (63 - k % 64);
            }
            k += 1;
        }
    }
    code
}

/// Backtracking isomorphism search on the disjoint union of both graphs so
/// refined colours are directly comparable across sides.
struct IsoSearch<'a> {
    left: &'a SimplicialGraph,
    right: &'a SimplicialGraph,
    adjacency: Vec<Vec<usize>>,
    found: Vec<Vec<usize>>,
    limit: usize,
}

impl<'a> IsoSearch<'a> {
    fn new(left: &'a SimplicialGraph, right: &'a SimplicialGraph, limit: usize) -> Self {
        let shift = left.len();
        let mut adjacency: Vec<Vec<usize>> =
            left.vertices().map(|v| left.neighbors(v).to_vec()).collect();
        adjacency.extend(
            right
                .vertices()
                .map(|v| right.neighbors(v).iter().map(|w| w + shift).collect()),
        );
        IsoSearch {
            left,
            right,
            adjacency,
            found: Vec::new(),
            limit,
        }
    }

    fn run(&mut self, fixed: &[(usize, usize)]) {
        if self.left.len() != self.right.len() || self.left.edge_count() != self.right.edge_count() {
            return;
        }
        let shift = self.left.len();
        let mut colors = vec![0u32; 2 * shift];
        for (k, &(a, b)) in fixed.iter().enumerate() {
            colors[a] = k as u32 + 1;
            colors[b + shift] = k as u32 + 1;
        }
        self.visit(colors);
    }

    fn visit(&mut self, mut colors: Vec<u32>) {
        if self.found.len() >= self.limit {
            return;
        }
        refine(&self.adjacency, &mut colors);
        let shift = self.left.len();
        let mut balance: HashMap<u32, isize> = HashMap::new();
        for (v, &c) in colors.iter().enumerate() {
            *balance.entry(c).or_default() += if v < shift { 1 } else { -1 };
        }
        if balance.values().any(|&b| b != 0) {
            return;
        }
        let mut sizes: HashMap<u32, usize> = HashMap::new();
        for &c in &colors[..shift] {
            *sizes.entry(c).or_default() += 1;
        }
        let split = sizes
            .iter()
            .filter(|(_, &s)| s > 1)
            .map(|(&c, _)| c)
            .min();
        match split {
            None => {
                let by_color: HashMap<u32, usize> =
                    (shift..2 * shift).map(|v| (colors[v], v - shift)).collect();
                let map: Vec<usize> = (0..shift).map(|v| by_color[&colors[v]]).collect();
                if self.is_isomorphism(&map) {
                    self.found.push(map);
                }
            }
            Some(color) => {
                let u = (0..shift).find(|&v| colors[v] == color).expect("cell member");
                let targets: Vec<usize> =
                    (shift..2 * shift).filter(|&v| colors[v] == color).collect();
                for w in targets {
                    self.visit(individualize(&colors, &[u, w]));
                    if self.found.len() >= self.limit {
                        return;
                    }
                }
            }
        }
    }

    fn is_isomorphism(&self, map: &[usize]) -> bool {
        self.left
            .edges()
            .all(|(a, b)| self.right.is_adjacent(map[a], map[b]))
    }
}

/// Finds an isomorphism `left → right` (as a vertex map) extending the given
/// fixed pairs, if one exists.
pub fn find_isomorphism(
    left: &SimplicialGraph,
    right: &SimplicialGraph,
    fixed: &[(usize, usize)],
) -> Option<Vec<usize>> {
    let mut search = IsoSearch::new(left, right, 1);
    search.run(fixed);
    search.found.pop()
}

/// All automorphisms of `graph`, as vertex maps; errors past `limit`.
pub fn automorphisms(graph: &SimplicialGraph, limit: usize) -> Result<Vec<Vec<usize>>> {
    let mut search = IsoSearch::new(graph, graph, limit + 1);
    search.run(&[]);
    if search.found.len() > limit {
        return Err(Error::resource(format!(
            "more than {limit} graph automorphisms"
        )));
    }
    let mut found = search.found;
    found.sort();
    Ok(found)
}

/// `|Aut(Γ)|` by orbit–stabiliser along a point-stabiliser chain.
pub fn automorphism_count(graph: &SimplicialGraph) -> u128 {
    let mut fixed: Vec<(usize, usize)> = Vec::new();
    let mut count: u128 = 1;
    for v in graph.vertices() {
        let orbit = graph
            .vertices()
            .filter(|&w| {
                let mut attempt = fixed.clone();
                attempt.push((v, w));
                find_isomorphism(graph, graph, &attempt).is_some()
            })
            .count();
        count *= orbit as u128;
        fixed.push((v, v));
    }
    count
}

/// Host vertices that lie in the image of some induced embedding of
/// `pattern` into `host`.
pub fn induced_copy_cover(pattern: &SimplicialGraph, host: &SimplicialGraph) -> VertexSet {
    let mut covered = VertexSet::new();
    if pattern.is_empty() || pattern.len() > host.len() {
        return covered;
    }
    for x in host.vertices() {
        if covered.contains(&x) {
            continue;
        }
        for p in pattern.vertices() {
            if pattern.degree(p) > host.degree(x) {
                continue;
            }
            if let Some(image) = embed_from(pattern, host, p, x) {
                covered.extend(image);
                break;
            }
        }
    }
    covered
}

fn embed_from(
    pattern: &SimplicialGraph,
    host: &SimplicialGraph,
    start: usize,
    image_of_start: usize,
) -> Option<Vec<usize>> {
    // BFS order from `start`, then any remaining components.
    let mut order = vec![start];
    let mut seen = vec![false; pattern.len()];
    seen[start] = true;
    let mut head = 0;
    loop {
        while head < order.len() {
            let u = order[head];
            head += 1;
            for &w in pattern.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                }
            }
        }
        match (0..pattern.len()).find(|&v| !seen[v]) {
            Some(v) => {
                seen[v] = true;
                order.push(v);
            }
            None => break,
        }
    }
    let mut map = vec![usize::MAX; pattern.len()];
    let mut used = vec![false; host.len()];
    map[start] = image_of_start;
    used[image_of_start] = true;
    if extend_embedding(pattern, host, &order, 1, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

fn extend_embedding(
    pattern: &SimplicialGraph,
    host: &SimplicialGraph,
    order: &[usize],
    depth: usize,
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let q = order[depth];
    let anchor = pattern
        .neighbors(q)
        .iter()
        .find(|&&p| map[p] != usize::MAX)
        .map(|&p| map[p]);
    let candidates: Vec<usize> = match anchor {
        Some(a) => host.neighbors(a).to_vec(),
        None => host.vertices().collect(),
    };
    for c in candidates {
        if used[c] || host.degree(c) < pattern.degree(q) {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&p| pattern.is_adjacent(p, q) == host.is_adjacent(map[p], c));
        if !consistent {
            continue;
        }
        map[q] = c;
        used[c] = true;
        if extend_embedding(pattern, host, order, depth + 1, map, used) {
            return true;
        }
        map[q] = usize::MAX;
        used[c] = false;
    }
    false
}
