//! Compact convex full subcomplexes of `X(Γ, S)`, stored by vertex set.
//!
//! A full subcomplex is convex iff its vertex set is interval-closed in the
//! word metric, so convexity is checked pairwise: for `x, y ∈ K` every
//! `x·p` with `p` a prefix of `x⁻¹y` must lie in `K`.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::extension::{ExtGraph, ExtVertex};
use crate::graph::GraphFile;
use crate::word::{Element, Raag};
use crate::{Error, Execution, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConvexComplex {
    vertices: BTreeSet<Element>,
}

impl ConvexComplex {
    /// The one-point complex `{id}`.
    pub fn point() -> Self {
        ConvexComplex {
            vertices: BTreeSet::from([Element::identity()]),
        }
    }

    pub fn validate(raag: &Raag, vertices: impl IntoIterator<Item = Element>) -> Result<Self> {
        Self::validate_with(raag, vertices, Execution::default())
    }

    pub fn validate_with(
        raag: &Raag,
        vertices: impl IntoIterator<Item = Element>,
        exec: Execution,
    ) -> Result<Self> {
        let vertices: BTreeSet<Element> = vertices.into_iter().collect();
        if !vertices.contains(&Element::identity()) {
            return Err(Error::MissingIdentity);
        }
        let cap = raag.limits().max_complex;
        if vertices.len() > cap {
            return Err(Error::resource(format!(
                "complex has {} vertices, validation is capped at {cap}",
                vertices.len()
            )));
        }
        check_connected(raag, &vertices)?;
        check_interval_closed(raag, &vertices, exec)?;
        check_full(raag, &vertices)?;
        Ok(ConvexComplex { vertices })
    }

    pub fn vertices(&self) -> &BTreeSet<Element> {
        &self.vertices
    }

    pub fn to_vec(&self) -> Vec<Element> {
        self.vertices.iter().cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, g: &Element) -> bool {
        self.vertices.contains(g)
    }

    /// All coordinates of all vertices are non-negative.
    pub fn is_nonnegative(&self, raag: &Raag) -> bool {
        self.vertices
            .iter()
            .all(|x| raag.coordinates(x).is_nonnegative())
    }

    /// Largest word distance between two vertices.
    pub fn diameter(&self, raag: &Raag) -> usize {
        let list = self.to_vec();
        let mut best = 0;
        for (i, x) in list.iter().enumerate() {
            for y in &list[i + 1..] {
                best = best.max(raag.distance(x, y));
            }
        }
        best
    }

    pub fn support_graph(&self, raag: &Raag) -> ExtGraph {
        raag.support(&self.to_vec())
    }

    /// Number of vertices of `K` on a geodesic of each class meeting `K`.
    /// Errors if two geodesics of one class meet `K` in different counts,
    /// which cannot happen for a convex `K`.
    pub fn widths(&self, raag: &Raag) -> Result<BTreeMap<ExtVertex, usize>> {
        let mut widths: BTreeMap<ExtVertex, usize> = BTreeMap::new();
        for x in &self.vertices {
            for s in raag.graph().vertices() {
                let class = raag.make_vertex(x, s);
                let count = self.line_count(raag, x, s);
                match widths.get(&class) {
                    Some(&seen) if seen != count => {
                        return Err(Error::Verification {
                            check: "width",
                            witness: format!(
                                "class {} meets K in {seen} and {count} vertices",
                                raag.ext_name(&class)
                            ),
                        })
                    }
                    _ => {
                        widths.insert(class, count);
                    }
                }
            }
        }
        Ok(widths)
    }

    /// `|{k : x·s^k ∈ K}|`.
    pub(crate) fn line_count(&self, raag: &Raag, x: &Element, s: usize) -> usize {
        let mut count = 1;
        for step in [1i64, -1] {
            let mut k = step;
            while self
                .vertices
                .contains(&raag.multiply(x, &raag.power(s, k)))
            {
                count += 1;
                k += step;
            }
        }
        count
    }
}

fn check_connected(raag: &Raag, vertices: &BTreeSet<Element>) -> Result<()> {
    let alphabet = raag.alphabet();
    let mut seen: HashSet<&Element> = HashSet::new();
    let id = vertices.get(&Element::identity()).expect("identity present");
    seen.insert(id);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for &l in &alphabet {
            let y = raag.multiply_letter(x, l);
            if let Some(y) = vertices.get(&y) {
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
    }
    match vertices.iter().find(|v| !seen.contains(v)) {
        Some(v) => Err(Error::Disconnected(raag.format(v))),
        None => Ok(()),
    }
}

fn check_interval_closed(
    raag: &Raag,
    vertices: &BTreeSet<Element>,
    exec: Execution,
) -> Result<()> {
    let list: Vec<&Element> = vertices.iter().collect();
    let indices: Vec<usize> = (0..list.len()).collect();
    let violation = exec.find_map_first(&indices, |&i| {
        let x = list[i];
        for y in &list[i + 1..] {
            let between = raag.difference(x, y);
            let divisors = match raag.left_divisors(&between) {
                Ok(d) => d,
                Err(e) => return Some(Err(e)),
            };
            for p in divisors {
                let z = raag.multiply(x, &p);
                if !vertices.contains(&z) {
                    return Some(Ok((x.clone(), z, (*y).clone())));
                }
            }
        }
        None
    });
    match violation {
        None => Ok(()),
        Some(Err(e)) => Err(e),
        Some(Ok((x, z, y))) => Err(Error::NotConvex {
            x: raag.format(&x),
            z: raag.format(&z),
            y: raag.format(&y),
        }),
    }
}

/// Every square whose two edges at a corner lie in the set has its fourth
/// vertex in the set. Implied by interval closure.
fn check_full(raag: &Raag, vertices: &BTreeSet<Element>) -> Result<()> {
    let alphabet = raag.alphabet();
    for x in vertices {
        for (i, &a) in alphabet.iter().enumerate() {
            for &b in &alphabet[i + 1..] {
                if a.generator == b.generator || !raag.commute(a.generator, b.generator) {
                    continue;
                }
                let xa = raag.multiply_letter(x, a);
                let xb = raag.multiply_letter(x, b);
                if vertices.contains(&xa) && vertices.contains(&xb) {
                    let corner = raag.multiply_letter(&xa, b);
                    if !vertices.contains(&corner) {
                        return Err(Error::NotConvex {
                            x: raag.format(&xa),
                            z: raag.format(&corner),
                            y: raag.format(&xb),
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

/// On-disk complex payload: `{"graph": {...}, "vertices": ["", "1", "1.3"]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    pub graph: GraphFile,
    pub vertices: Vec<String>,
}

impl ComplexFile {
    pub fn from_complex(raag: &Raag, complex: &ConvexComplex) -> Self {
        ComplexFile {
            graph: GraphFile::from(raag.graph()),
            vertices: complex.vertices.iter().map(|g| raag.format(g)).collect(),
        }
    }

    /// Parses the graph and validates the vertex set against it.
    pub fn load(self) -> Result<(Raag, ConvexComplex)> {
        let raag = Raag::new(self.graph.into_graph()?);
        let elements = self
            .vertices
            .iter()
            .map(|w| raag.word(w))
            .collect::<Result<Vec<_>>>()?;
        let complex = ConvexComplex::validate(&raag, elements)?;
        Ok((raag, complex))
    }
}
