//! Independent oracles shared by the integration tests. Nothing here calls the
//! algorithm it is used to check.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::path::PathBuf;

use raag_core::graph::canonical_form;
use raag_core::{CanonicalForm, Element, Raag, SimplicialGraph};

// ---------------------------------------------------------------- words

/// A raw word: `(generator, inverse)` letters, ordered like the library's
/// letters (generator first, positive before inverse).
pub type RawWord = Vec<(usize, bool)>;

pub fn raw(g: &Element) -> RawWord {
    g.letters().iter().map(|l| (l.generator, l.inverse)).collect()
}

pub fn raw_inverse(w: &RawWord) -> RawWord {
    w.iter().rev().map(|&(g, i)| (g, !i)).collect()
}

/// Rewriting closure under commutation swaps and free cancellation.
pub struct Rewriter<'a> {
    graph: &'a SimplicialGraph,
}

impl<'a> Rewriter<'a> {
    pub fn new(graph: &'a SimplicialGraph) -> Self {
        Rewriter { graph }
    }

    fn commute(&self, a: (usize, bool), b: (usize, bool)) -> bool {
        a.0 != b.0 && self.graph.is_adjacent(a.0, b.0)
    }

    /// Every word reachable by swapping adjacent commuting letters or
    /// deleting adjacent inverse pairs.
    pub fn closure(&self, w: &RawWord) -> HashSet<RawWord> {
        let mut seen: HashSet<RawWord> = HashSet::from([w.clone()]);
        let mut queue = VecDeque::from([w.clone()]);
        while let Some(w) = queue.pop_front() {
            for i in 0..w.len().saturating_sub(1) {
                let (a, b) = (w[i], w[i + 1]);
                let mut next = None;
                if a.0 == b.0 && a.1 != b.1 {
                    let mut v = w.clone();
                    v.drain(i..i + 2);
                    next = Some(v);
                } else if self.commute(a, b) {
                    let mut v = w.clone();
                    v.swap(i, i + 1);
                    next = Some(v);
                }
                if let Some(v) = next {
                    if seen.insert(v.clone()) {
                        queue.push_back(v);
                    }
                }
            }
        }
        seen
    }

    /// Shortest, then lexicographically least, word in the closure.
    pub fn key(&self, w: &RawWord) -> RawWord {
        self.closure(w)
            .into_iter()
            .min_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)))
            .expect("closure contains the word")
    }

    /// Ball of the given radius, built by appending letters and reducing.
    pub fn ball(&self, radius: usize) -> Vec<BTreeSet<RawWord>> {
        let letters: Vec<(usize, bool)> = self
            .graph
            .vertices()
            .flat_map(|g| [(g, false), (g, true)])
            .collect();
        let mut spheres = vec![BTreeSet::from([RawWord::new()])];
        let mut all: HashSet<RawWord> = HashSet::from([RawWord::new()]);
        for _ in 0..radius {
            let mut next = BTreeSet::new();
            for w in spheres.last().unwrap() {
                for &l in &letters {
                    let mut v = w.clone();
                    v.push(l);
                    let k = self.key(&v);
                    if !all.contains(&k) {
                        next.insert(k);
                    }
                }
            }
            all.extend(next.iter().cloned());
            spheres.push(next);
        }
        spheres
    }

    pub fn distance(&self, x: &RawWord, y: &RawWord) -> usize {
        let mut w = raw_inverse(x);
        w.extend_from_slice(y);
        self.key(&w).len()
    }
}

/// Minimal number of powers `s^k` (`|k| ≤ max_power`) multiplying to each
/// element reached within `depth` factors, searching only through elements of
/// length at most `max_len`.
pub fn syllable_distances(raag: &Raag, max_power: i64, depth: usize, max_len: usize) -> HashMap<Element, usize> {
    let powers: Vec<Element> = raag
        .graph()
        .vertices()
        .flat_map(|s| (-max_power..=max_power).filter(|&k| k != 0).map(move |k| (s, k)))
        .map(|(s, k)| raag.power(s, k))
        .collect();
    let mut dist = HashMap::from([(Element::identity(), 0)]);
    let mut level = vec![Element::identity()];
    for d in 1..=depth {
        let mut next = Vec::new();
        for x in &level {
            for p in &powers {
                let y = raag.multiply(x, p);
                if y.len() <= max_len && !dist.contains_key(&y) {
                    dist.insert(y.clone(), d);
                    next.push(y);
                }
            }
        }
        level = next;
    }
    dist
}

/// Minimal right coset representative by stripping, in a random order, any
/// last letter (in the commutation sense) whose generator lies in `St(s)`.
pub fn strip_randomly(graph: &SimplicialGraph, w: &RawWord, s: usize, rng: &mut impl rand::Rng) -> RawWord {
    let in_star = |g: usize| g == s || graph.is_adjacent(g, s);
    let commute = |a: usize, b: usize| a == b || graph.is_adjacent(a, b);
    let mut w = w.clone();
    loop {
        let candidates: Vec<usize> = (0..w.len())
            .filter(|&i| in_star(w[i].0) && w[i + 1..].iter().all(|l| commute(l.0, w[i].0)))
            .collect();
        if candidates.is_empty() {
            return w;
        }
        let i = candidates[rng.gen_range(0..candidates.len())];
        w.remove(i);
    }
}

// ---------------------------------------------------------------- graphs

/// Adjacency as bitmasks.
pub fn masks(graph: &SimplicialGraph) -> Vec<u32> {
    graph
        .vertices()
        .map(|v| graph.neighbors(v).iter().fold(0u32, |m, &u| m | 1 << u))
        .collect()
}

/// Every labelled graph on `n` vertices, named `1..=n`.
pub fn labelled_graphs(n: usize) -> impl Iterator<Item = SimplicialGraph> {
    let pairs: Vec<(usize, usize)> = (1..=n)
        .flat_map(|a| (a + 1..=n).map(move |b| (a, b)))
        .collect();
    (0u64..1 << pairs.len()).map(move |bits| {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| bits >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        SimplicialGraph::numbered(n, &edges).unwrap()
    })
}

/// One representative per isomorphism class, for each order `0..=max`,
/// grown by adding a vertex with every possible neighbourhood.
pub fn graphs_up_to_iso(max: usize) -> Vec<Vec<SimplicialGraph>> {
    let mut out = vec![vec![SimplicialGraph::numbered(0, &[]).unwrap()]];
    for n in 1..=max {
        let mut classes: HashMap<CanonicalForm, SimplicialGraph> = HashMap::new();
        for g in &out[n - 1] {
            let old: Vec<(usize, usize)> = g.edges().map(|(a, b)| (a + 1, b + 1)).collect();
            for nbhd in 0u32..1 << (n - 1) {
                let mut edges = old.clone();
                edges.extend((0..n - 1).filter(|i| nbhd >> i & 1 == 1).map(|i| (i + 1, n)));
                let h = SimplicialGraph::numbered(n, &edges).unwrap();
                classes.entry(canonical_form(&h).unwrap()).or_insert(h);
            }
        }
        let mut level: Vec<(CanonicalForm, SimplicialGraph)> = classes.into_iter().collect();
        level.sort_by(|a, b| a.0.cmp(&b.0));
        out.push(level.into_iter().map(|(_, g)| g).collect());
    }
    out
}

/// Components of the vertex set `keep`.
pub fn mask_components(adj: &[u32], keep: u32) -> Vec<u32> {
    let mut left = keep;
    let mut comps = Vec::new();
    while left != 0 {
        let mut comp = left & left.wrapping_neg();
        loop {
            let grown = (0..adj.len())
                .filter(|&v| comp >> v & 1 == 1)
                .fold(comp, |m, v| m | (adj[v] & keep));
            if grown == comp {
                break;
            }
            comp = grown;
        }
        comps.push(comp);
        left &= !comp;
    }
    comps
}

pub fn star_mask(adj: &[u32], v: usize) -> u32 {
    adj[v] | 1 << v
}

/// `lk(w) ⊆ St(v)`.
pub fn link_in_star(adj: &[u32], w: usize, v: usize) -> bool {
    adj[w] & !star_mask(adj, v) == 0
}

/// `(w, v, adjacent)` for every transvection.
pub fn oracle_transvections(adj: &[u32]) -> BTreeSet<(usize, usize, bool)> {
    let n = adj.len();
    let mut out = BTreeSet::new();
    for w in 0..n {
        for v in 0..n {
            if v != w && link_in_star(adj, w, v) {
                out.insert((w, v, adj[w] >> v & 1 == 1));
            }
        }
    }
    out
}

/// Separating vertices with their components as masks.
pub fn oracle_separating(adj: &[u32]) -> Vec<(usize, BTreeSet<u32>)> {
    let all = (1u32 << adj.len()) - 1;
    (0..adj.len())
        .filter_map(|v| {
            let comps = mask_components(adj, all & !star_mask(adj, v));
            (comps.len() >= 2).then(|| (v, comps.into_iter().collect()))
        })
        .collect()
}

pub fn is_clique_mask(adj: &[u32], set: u32) -> bool {
    (0..adj.len())
        .filter(|&v| set >> v & 1 == 1)
        .all(|v| set & !(adj[v] | 1 << v) == 0)
}

/// Some pair of closed stars contains every clique.
pub fn oracle_two_star_cover(adj: &[u32]) -> bool {
    let n = adj.len();
    let cliques: Vec<u32> = (1u32..1 << n).filter(|&s| is_clique_mask(adj, s)).collect();
    (0..n).any(|a| {
        (0..n).any(|b| {
            cliques.iter().all(|&c| {
                c & !star_mask(adj, a) == 0 || c & !star_mask(adj, b) == 0
            })
        })
    })
}

pub fn to_mask(set: &BTreeSet<usize>) -> u32 {
    set.iter().fold(0, |m, &v| m | 1 << v)
}

/// Vertex maps preserving edges, by brute force over all permutations.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Least adjacency code over all relabellings.
pub fn brute_canonical(graph: &SimplicialGraph, perms: &[Vec<usize>]) -> Vec<bool> {
    let n = graph.len();
    perms
        .iter()
        .map(|p| {
            let mut code = Vec::with_capacity(n * n);
            for i in 0..n {
                for j in i + 1..n {
                    code.push(graph.is_adjacent(p[i], p[j]));
                }
            }
            code
        })
        .min()
        .unwrap_or_default()
}

pub fn brute_automorphisms(graph: &SimplicialGraph, perms: &[Vec<usize>]) -> usize {
    perms
        .iter()
        .filter(|p| graph.edges().all(|(a, b)| graph.is_adjacent(p[a], p[b])))
        .count()
}

// ---------------------------------------------------------------- convexity

/// Geodesic interval `[x, y]` by walking letters that decrease the distance
/// to `y`.
pub fn bfs_interval(raag: &Raag, x: &Element, y: &Element) -> HashSet<Element> {
    let alphabet = raag.alphabet();
    let mut seen = HashSet::from([x.clone()]);
    let mut queue = VecDeque::from([x.clone()]);
    while let Some(z) = queue.pop_front() {
        let d = raag.distance(&z, y);
        for &l in &alphabet {
            let w = raag.multiply_letter(&z, l);
            if raag.distance(&w, y) + 1 == d && seen.insert(w.clone()) {
                queue.push_back(w);
            }
        }
    }
    seen
}

pub fn oracle_convex(raag: &Raag, set: &BTreeSet<Element>) -> bool {
    set.contains(&Element::identity())
        && set.iter().all(|x| {
            set.iter()
                .all(|y| bfs_interval(raag, x, y).iter().all(|z| set.contains(z)))
        })
}

pub fn oracle_hull(raag: &Raag, set: &BTreeSet<Element>) -> BTreeSet<Element> {
    let mut hull = set.clone();
    loop {
        let list: Vec<Element> = hull.iter().cloned().collect();
        let mut grown = hull.clone();
        for x in &list {
            for y in &list {
                grown.extend(bfs_interval(raag, x, y));
            }
        }
        if grown.len() == hull.len() {
            return hull;
        }
        hull = grown;
    }
}

// ---------------------------------------------------------------- abstract GSE

/// The graph-only process: a graph, each vertex labelled by a vertex of `Γ`,
/// with a cover by induced copies of `Γ` (as vertex lists indexed by label).
#[derive(Clone, Debug)]
pub struct AbstractState {
    pub adj: Vec<BTreeSet<usize>>,
    pub label: Vec<usize>,
    pub covers: Vec<Vec<usize>>,
}

impl AbstractState {
    pub fn initial(graph: &SimplicialGraph) -> Self {
        AbstractState {
            adj: graph.vertices().map(|v| graph.neighbors(v).iter().copied().collect()).collect(),
            label: graph.vertices().collect(),
            covers: vec![graph.vertices().collect()],
        }
    }

    pub fn graph(&self) -> SimplicialGraph {
        let edges: Vec<(usize, usize)> = self
            .adj
            .iter()
            .enumerate()
            .flat_map(|(a, n)| n.iter().filter(move |&&b| a < b).map(move |&b| (a + 1, b + 1)))
            .collect();
        SimplicialGraph::numbered(self.adj.len(), &edges).unwrap()
    }

    /// Glues a fresh copy of one component of `Γ_v ∖ St(v, Γ_v)` along the
    /// star, copying every cover that lies inside the glued piece.
    pub fn step(&self, v: usize) -> AbstractState {
        let through: Vec<&Vec<usize>> = self.covers.iter().filter(|c| c.contains(&v)).collect();
        let gamma_v: BTreeSet<usize> = through.iter().flat_map(|c| c.iter().copied()).collect();
        let edge_in_cover = |a: usize, b: usize| {
            self.adj[a].contains(&b) && through.iter().any(|c| c.contains(&a) && c.contains(&b))
        };
        let star: BTreeSet<usize> = gamma_v
            .iter()
            .copied()
            .filter(|&u| u == v || edge_in_cover(u, v))
            .collect();
        let rest: BTreeSet<usize> = gamma_v.difference(&star).copied().collect();
        let Some(&seed) = rest.iter().next() else {
            return self.clone();
        };
        let mut comp = BTreeSet::from([seed]);
        let mut queue = vec![seed];
        while let Some(a) = queue.pop() {
            for &b in &rest {
                if edge_in_cover(a, b) && comp.insert(b) {
                    queue.push(b);
                }
            }
        }
        let piece: BTreeSet<usize> = comp.union(&star).copied().collect();
        let mut next = self.clone();
        let mut copy: HashMap<usize, usize> = star.iter().map(|&u| (u, u)).collect();
        for &u in &comp {
            copy.insert(u, next.adj.len());
            next.adj.push(BTreeSet::new());
            next.label.push(self.label[u]);
        }
        for &a in &piece {
            for &b in &piece {
                if a < b && (comp.contains(&a) || comp.contains(&b)) && edge_in_cover(a, b) {
                    let (x, y) = (copy[&a], copy[&b]);
                    next.adj[x].insert(y);
                    next.adj[y].insert(x);
                }
            }
        }
        for c in &self.covers {
            if c.iter().all(|u| piece.contains(u)) && c.iter().any(|u| comp.contains(u)) {
                next.covers.push(c.iter().map(|u| copy[u]).collect());
            }
        }
        next
    }
}

/// Canonical forms of every graph reachable in at most `depth` steps.
pub fn abstract_census(graph: &SimplicialGraph, depth: usize) -> BTreeSet<CanonicalForm> {
    let mut forms = BTreeSet::new();
    let mut level = vec![AbstractState::initial(graph)];
    for d in 0..=depth {
        for s in &level {
            forms.insert(canonical_form(&s.graph()).unwrap());
        }
        if d == depth {
            break;
        }
        level = level
            .iter()
            .flat_map(|s| (0..s.adj.len()).map(move |v| s.step(v)))
            .collect();
    }
    forms
}

// ---------------------------------------------------------------- fixtures

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

pub fn golden(name: &str) -> serde_json::Value {
    let path = golden_dir().join(name);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    serde_json::from_str(&text).unwrap()
}

pub fn c5() -> Raag {
    Raag::new(SimplicialGraph::cycle(5))
}

pub fn p3() -> Raag {
    Raag::new(SimplicialGraph::new(["a", "b", "c"], [("a", "b"), ("b", "c")]).unwrap())
}

pub fn k2() -> Raag {
    Raag::new(SimplicialGraph::new(["a", "b"], [("a", "b")]).unwrap())
}

pub fn f2() -> Raag {
    Raag::new(SimplicialGraph::new(["a", "b"], Vec::<(&str, &str)>::new()).unwrap())
}
