//! Exact arithmetic in the right-angled Artin group `G(Γ)`.
//!
//! Elements are stored in canonical form: the lexicographically least reduced
//! word among all commutation shuffles, with generators ordered by vertex
//! index and `v < v⁻¹`. Equality of [`Element`] values is therefore equality
//! in the group.

mod ball;
mod coords;
mod literal;

use std::cmp::Ordering;
use std::collections::HashSet;

use crate::extension::ExtVertex;
use crate::graph::{SimplicialGraph, VertexSet};
use crate::{Error, Limits, Result};

pub use coords::Coordinates;

/// A generator or its inverse. The derived order is the letter order used
/// by normal forms: by generator index, positive before inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn positive(generator: usize) -> Self {
        Letter {
            generator,
            inverse: false,
        }
    }

    pub fn negative(generator: usize) -> Self {
        Letter {
            generator,
            inverse: true,
        }
    }

    pub fn inv(self) -> Self {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }

    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

/// A group element in canonical form. Ordered shortlex.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Element {
    letters: Vec<Letter>,
}

impl Element {
    pub fn identity() -> Self {
        Element::default()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Generators occurring in the word.
    pub fn support(&self) -> VertexSet {
        self.letters.iter().map(|l| l.generator).collect()
    }
}

impl Ord for Element {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters
            .len()
            .cmp(&other.letters.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// The group `G(Γ)` together with its commutation table.
#[derive(Clone, Debug)]
pub struct Raag {
    graph: SimplicialGraph,
    commutes: Vec<bool>,
    stars: Vec<Vec<bool>>,
    limits: Limits,
}

impl Raag {
    pub fn new(graph: SimplicialGraph) -> Self {
        Self::with_limits(graph, Limits::default())
    }

    pub fn with_limits(graph: SimplicialGraph, limits: Limits) -> Self {
        let n = graph.len();
        let mut commutes = vec![false; n * n];
        for (a, b) in graph.edges() {
            commutes[a * n + b] = true;
            commutes[b * n + a] = true;
        }
        let stars = graph
            .vertices()
            .map(|s| {
                let mut mask = vec![false; n];
                for v in graph.star(s) {
                    mask[v] = true;
                }
                mask
            })
            .collect();
        Raag {
            graph,
            commutes,
            stars,
            limits,
        }
    }

    pub fn graph(&self) -> &SimplicialGraph {
        &self.graph
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub fn rank(&self) -> usize {
        self.graph.len()
    }

    /// Distinct generators `a`, `b` commute iff adjacent.
    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.commutes[a * self.rank() + b]
    }

    pub(crate) fn in_star(&self, s: usize, t: usize) -> bool {
        self.stars[s][t]
    }

    /// All `2·rank` letters in letter order.
    pub fn alphabet(&self) -> Vec<Letter> {
        self.graph
            .vertices()
            .flat_map(|g| [Letter::positive(g), Letter::negative(g)])
            .collect()
    }

    pub fn identity(&self) -> Element {
        Element::identity()
    }

    pub fn generator(&self, s: usize) -> Element {
        Element {
            letters: vec![Letter::positive(s)],
        }
    }

    /// `s^k`.
    pub fn power(&self, s: usize, k: i64) -> Element {
        let letter = if k < 0 {
            Letter::negative(s)
        } else {
            Letter::positive(s)
        };
        Element {
            letters: vec![letter; k.unsigned_abs() as usize],
        }
    }

    /// Canonical representative of the product of `letters`.
    pub fn normal_form(&self, letters: &[Letter]) -> Result<Element> {
        if let Some(bad) = letters.iter().find(|l| l.generator >= self.rank()) {
            return Err(Error::input(format!(
                "unknown generator index {} (rank {})",
                bad.generator,
                self.rank()
            )));
        }
        Ok(self.normalize(letters.iter().copied()))
    }

    pub(crate) fn normalize(&self, letters: impl IntoIterator<Item = Letter>) -> Element {
        let mut reduced = Vec::new();
        for letter in letters {
            self.push_reduced(&mut reduced, letter);
        }
        Element {
            letters: self.least_shuffle(&reduced),
        }
    }

    /// Appends `letter` to a reduced word, cancelling against the last letter
    /// of the same generator that everything after it commutes past.
    fn push_reduced(&self, word: &mut Vec<Letter>, letter: Letter) {
        for k in (0..word.len()).rev() {
            let other = word[k];
            if other.generator == letter.generator {
                if other.inverse != letter.inverse {
                    word.remove(k);
                    return;
                }
                break;
            }
            if !self.commute(other.generator, letter.generator) {
                break;
            }
        }
        word.push(letter);
    }

    /// Lexicographically least linear extension of the trace of a reduced
    /// word: repeatedly emit the smallest letter with no pending blocker.
    fn least_shuffle(&self, word: &[Letter]) -> Vec<Letter> {
        let n = word.len();
        let mut blockers = vec![0usize; n];
        for j in 0..n {
            for i in 0..j {
                if !self.letters_commute(word[i], word[j]) {
                    blockers[j] += 1;
                }
            }
        }
        let mut done = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            let next = (0..n)
                .filter(|&i| !done[i] && blockers[i] == 0)
                .min_by_key(|&i| word[i])
                .expect("a trace always has a minimal letter");
            done[next] = true;
            out.push(word[next]);
            for j in next + 1..n {
                if !done[j] && !self.letters_commute(word[next], word[j]) {
                    blockers[j] -= 1;
                }
            }
        }
        out
    }

    fn letters_commute(&self, a: Letter, b: Letter) -> bool {
        a.generator != b.generator && self.commute(a.generator, b.generator)
    }

    pub fn multiply(&self, g: &Element, h: &Element) -> Element {
        self.normalize(g.letters.iter().chain(h.letters.iter()).copied())
    }

    pub fn multiply_letter(&self, g: &Element, letter: Letter) -> Element {
        self.normalize(g.letters.iter().copied().chain(std::iter::once(letter)))
    }

    pub fn inverse(&self, g: &Element) -> Element {
        self.normalize(g.letters.iter().rev().map(|l| l.inv()))
    }

    /// `g⁻¹·h`.
    pub fn difference(&self, g: &Element, h: &Element) -> Element {
        self.normalize(
            g.letters
                .iter()
                .rev()
                .map(|l| l.inv())
                .chain(h.letters.iter().copied()),
        )
    }

    /// `r·s^k·r⁻¹`.
    pub fn conjugate_power(&self, r: &Element, s: usize, k: i64) -> Element {
        let p = self.power(s, k);
        self.normalize(
            r.letters
                .iter()
                .copied()
                .chain(p.letters.iter().copied())
                .chain(r.letters.iter().rev().map(|l| l.inv())),
        )
    }

    /// Word distance `d_w(g, h)`.
    pub fn distance(&self, g: &Element, h: &Element) -> usize {
        self.difference(g, h).len()
    }

    /// `(d_w(id, g), d_r(id, g))`. The syllable length counts the distinct
    /// parallelism classes of hyperplanes separating `g` from the identity.
    pub fn geodesic_length(&self, g: &Element) -> (usize, usize) {
        (g.len(), self.syllable_length(g))
    }

    pub fn syllable_length(&self, g: &Element) -> usize {
        let mut classes = HashSet::new();
        let mut prefix = Element::identity();
        for &letter in &g.letters {
            classes.insert(self.make_vertex(&prefix, letter.generator));
            prefix.letters.push(letter);
        }
        classes.len()
    }

    /// Syllable distance `d_r(g, h)`.
    pub fn syllable_distance(&self, g: &Element, h: &Element) -> usize {
        self.syllable_length(&self.difference(g, h))
    }

    /// Marks the maximal divisor of `g` on `side` whose letters all satisfy
    /// `in_set`.
    fn divisor_mask(&self, g: &Element, side: Side, in_set: impl Fn(usize) -> bool) -> Vec<bool> {
        let w = &g.letters;
        let n = w.len();
        let mut mask = vec![false; n];
        match side {
            Side::Left => {
                for i in 0..n {
                    mask[i] = in_set(w[i].generator)
                        && (0..i).all(|j| mask[j] || self.letters_commute(w[j], w[i]));
                }
            }
            Side::Right => {
                for i in (0..n).rev() {
                    mask[i] = in_set(w[i].generator)
                        && (i + 1..n).all(|j| mask[j] || self.letters_commute(w[i], w[j]));
                }
            }
        }
        mask
    }

    fn split_by_mask(&self, g: &Element, mask: &[bool]) -> (Element, Element) {
        let part = |want: bool| {
            self.normalize(
                g.letters
                    .iter()
                    .zip(mask)
                    .filter(|(_, &m)| m == want)
                    .map(|(l, _)| *l),
            )
        };
        (part(true), part(false))
    }

    /// Splits off the maximal left (or right) divisor of `g` supported in
    /// `set`. Returns `(g_A, rest)` with `g = g_A·rest` on the left and
    /// `g = rest·g_A` on the right.
    pub fn parabolic_split(&self, g: &Element, set: &VertexSet, side: Side) -> (Element, Element) {
        let mask = self.divisor_mask(g, side, |v| set.contains(&v));
        self.split_by_mask(g, &mask)
    }

    /// Minimal representative of the left coset `g·G(St(s))`.
    pub fn coset_rep(&self, g: &Element, s: usize) -> Element {
        let mask = self.divisor_mask(g, Side::Right, |v| self.in_star(s, v));
        self.split_by_mask(g, &mask).1
    }

    /// `g ∈ G(A)·G(B)`.
    pub fn in_parabolic_product(&self, g: &Element, a: &VertexSet, b: &VertexSet) -> bool {
        let (_, rest) = self.parabolic_split(g, a, Side::Left);
        rest.letters.iter().all(|l| b.contains(&l.generator))
    }

    pub(crate) fn in_star_product(&self, g: &Element, s: usize, t: usize) -> bool {
        let mask = self.divisor_mask(g, Side::Left, |v| self.in_star(s, v));
        g.letters
            .iter()
            .zip(&mask)
            .all(|(l, &m)| m || self.in_star(t, l.generator))
    }

    /// The parallelism class `(s, coset_rep(g, s))` of the `s`-geodesic
    /// through `g`.
    pub fn make_vertex(&self, g: &Element, s: usize) -> ExtVertex {
        ExtVertex {
            label: s,
            rep: self.coset_rep(g, s),
        }
    }

    /// Signed hyperplane crossings of the canonical word, keyed by class.
    pub fn coordinates(&self, g: &Element) -> Coordinates {
        let mut coords = Coordinates::default();
        let mut prefix = Element::identity();
        for &letter in &g.letters {
            coords.add(self.make_vertex(&prefix, letter.generator), letter.sign());
            prefix.letters.push(letter);
        }
        coords
    }

    /// Single coordinate `I_v(g)`.
    pub fn coordinate(&self, g: &Element, v: &ExtVertex) -> i64 {
        let mut total = 0;
        let mut prefix = Element::identity();
        for &letter in &g.letters {
            if letter.generator == v.label && self.coset_rep(&prefix, v.label) == v.rep {
                total += letter.sign();
            }
            prefix.letters.push(letter);
        }
        total
    }

    /// Every `p` with `|p| + |p⁻¹g| = |g|`, i.e. the prefixes of `g` in the
    /// trace order, sorted shortlex.
    pub fn left_divisors(&self, g: &Element) -> Result<Vec<Element>> {
        let w = &g.letters;
        let n = w.len();
        if n > 128 {
            return Err(Error::resource("divisor enumeration limited to words of length 128"));
        }
        let preds: Vec<u128> = (0..n)
            .map(|i| {
                (0..i)
                    .filter(|&j| !self.letters_commute(w[j], w[i]))
                    .fold(0u128, |m, j| m | (1 << j))
            })
            .collect();
        let mut seen: HashSet<u128> = HashSet::from([0]);
        let mut stack = vec![0u128];
        while let Some(ideal) = stack.pop() {
            for (i, &pred) in preds.iter().enumerate() {
                let bit = 1u128 << i;
                if ideal & bit == 0 && pred & !ideal == 0 && seen.insert(ideal | bit) {
                    stack.push(ideal | bit);
                }
            }
        }
        let mut out: Vec<Element> = seen
            .into_iter()
            .map(|ideal| self.normalize((0..n).filter(|i| ideal >> i & 1 == 1).map(|i| w[i])))
            .collect();
        out.sort();
        Ok(out)
    }

    /// Swaps the levels 0 and 1 of the projection to the `s`-geodesic through
    /// the identity by translating with `s^{±1}`.
    pub fn level_flip(&self, s: usize, g: &Element) -> Element {
        let axis = ExtVertex {
            label: s,
            rep: Element::identity(),
        };
        match self.coordinate(g, &axis) {
            0 => self.multiply(&self.generator(s), g),
            1 => self.multiply(&self.power(s, -1), g),
            _ => g.clone(),
        }
    }

    /// Applies a generator substitution (e.g. a graph automorphism).
    pub fn relabel(&self, g: &Element, map: &[usize]) -> Element {
        self.normalize(g.letters.iter().map(|l| Letter {
            generator: map[l.generator],
            inverse: l.inverse,
        }))
    }
}
