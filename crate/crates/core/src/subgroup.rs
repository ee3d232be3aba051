//! Special subgroups: `Θ_S(K)` for a non-negative convex complex `K`, the
//! retraction onto `K`, finite-ball verification, and embeddings generated by
//! conjugated powers along a finite set of extension-graph classes.
//!
//! One generator `r·s^n·r⁻¹` per class `(s, r)` of the support of `K`, with
//! `n` the width of `K` along that class. Crossing out of `K` through a
//! hyperplane of class `c` lands in the tile translated by the generator of
//! `c`, which gives the retraction as a walk along any word for `g`.

use std::collections::{BTreeSet, HashMap};

use serde_json::{json, Value};

use crate::convex::ConvexComplex;
use crate::extension::{ExtGraph, ExtVertex};
use crate::word::{Element, Letter, Raag, Side};
use crate::{Error, Execution, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupGenerator {
    pub class: ExtVertex,
    pub conjugator: Element,
    pub base: usize,
    pub power: u32,
    /// `conjugator·base^power·conjugator⁻¹` in normal form.
    pub element: Element,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialSubgroup {
    generators: Vec<SubgroupGenerator>,
    defining_graph: ExtGraph,
    source: Option<ConvexComplex>,
    index: Option<usize>,
}

/// `g = gamma·k` with `gamma = ∏ generator[i]^e` over `expression`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Retraction {
    pub gamma: Element,
    pub k: Element,
    pub expression: Vec<(usize, i64)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub radius: usize,
    pub ball: usize,
    pub tiles: usize,
    pub injectivity_radius: usize,
    pub products: usize,
}

/// Elements compared in the injectivity check are capped at this count.
const INJECTIVITY_BUDGET: usize = 40_000;

fn generator(raag: &Raag, class: ExtVertex, conjugator: Element, power: u32) -> SubgroupGenerator {
    let element = raag.conjugate_power(&conjugator, class.label, i64::from(power));
    SubgroupGenerator {
        base: class.label,
        class,
        conjugator,
        power,
        element,
    }
}

impl SpecialSubgroup {
    pub fn generators(&self) -> &[SubgroupGenerator] {
        &self.generators
    }

    pub fn defining_graph(&self) -> &ExtGraph {
        &self.defining_graph
    }

    pub fn source(&self) -> Option<&ConvexComplex> {
        self.source.as_ref()
    }

    pub fn index(&self) -> Option<usize> {
        self.index
    }

    /// Replaces the power of generator `i`, keeping everything else. Used to
    /// build deliberately broken subgroups.
    pub fn with_power(mut self, raag: &Raag, i: usize, power: u32) -> Self {
        let g = &self.generators[i];
        self.generators[i] = generator(raag, g.class.clone(), g.conjugator.clone(), power);
        self
    }

    pub fn to_json(&self, raag: &Raag) -> Value {
        json!({
            "generators": self.generators.iter().map(|g| json!({
                "class": raag.ext_name(&g.class),
                "conjugator": raag.format(&g.conjugator),
                "base": raag.graph().name(g.base),
                "power": g.power,
                "element": raag.format(&g.element),
            })).collect::<Vec<_>>(),
            "defining_graph": self.defining_graph.graph().to_json_value(),
            "index": self.index,
        })
    }

    /// Evaluates a product expression in the ambient group.
    pub fn evaluate(&self, raag: &Raag, expression: &[(usize, i64)]) -> Element {
        let letters = expression.iter().flat_map(|&(i, e)| {
            let g = &self.generators[i].element;
            let word: Vec<Letter> = if e >= 0 {
                g.letters().to_vec()
            } else {
                g.letters().iter().rev().map(|l| l.inv()).collect()
            };
            std::iter::repeat_n(word, e.unsigned_abs() as usize).flatten()
        });
        raag.normalize(letters)
    }

    fn require_source(&self) -> Result<&ConvexComplex> {
        self.source
            .as_ref()
            .ok_or_else(|| Error::precondition("subgroup has no fundamental domain"))
    }

    /// Moves `(gamma, k)` across the edge `k → k·letter`.
    fn step(&self, raag: &Raag, source: &ConvexComplex, state: &mut Retraction, letter: Letter) -> Result<()> {
        let next = raag.multiply_letter(&state.k, letter);
        if source.contains(&next) {
            state.k = next;
            return Ok(());
        }
        let class = raag.make_vertex(&state.k, letter.generator);
        let i = self
            .defining_graph
            .index_of(&class)
            .ok_or_else(|| Error::SearchExhausted(format!("class {} has no generator", raag.ext_name(&class))))?;
        let sign = letter.sign();
        let gen = &self.generators[i].element;
        let landed = if sign > 0 {
            raag.difference(gen, &next)
        } else {
            raag.multiply(gen, &next)
        };
        if !source.contains(&landed) {
            return Err(Error::SearchExhausted(format!(
                "crossing {} from {} leaves every tile",
                raag.format_letters(&[letter]),
                raag.format(&state.k)
            )));
        }
        state.gamma = if sign > 0 {
            raag.multiply(&state.gamma, gen)
        } else {
            raag.multiply(&state.gamma, &raag.inverse(gen))
        };
        match state.expression.last_mut() {
            Some((j, e)) if *j == i => {
                *e += sign;
                if *e == 0 {
                    state.expression.pop();
                }
            }
            _ => state.expression.push((i, sign)),
        }
        state.k = landed;
        Ok(())
    }

    /// The factorisation `g = γ·k` with `k ∈ K` and `γ` in the subgroup.
    pub fn retraction(&self, raag: &Raag, g: &Element) -> Result<Retraction> {
        let source = self.require_source()?;
        let mut state = Retraction {
            gamma: Element::identity(),
            k: Element::identity(),
            expression: Vec::new(),
        };
        for &letter in g.letters() {
            self.step(raag, source, &mut state, letter)?;
        }
        Ok(state)
    }

    /// Checks over `ball(R)`: (a) the tiles `γ·K` met by the ball are pairwise
    /// disjoint, the retraction is well defined across every edge, and
    /// `r⁻¹(id) = K`; (b) generators commute exactly along defining edges;
    /// (c) distinct short products in the abstract group stay distinct.
    pub fn verify(&self, raag: &Raag, radius: usize) -> Result<VerifyReport> {
        self.verify_with(raag, radius, Execution::default())
    }

    pub fn verify_with(&self, raag: &Raag, radius: usize, exec: Execution) -> Result<VerifyReport> {
        let source = self.require_source()?;
        let ball = raag.cayley_ball_with(radius, exec)?;
        let retractions = exec.map(&ball, |g| self.retraction(raag, g));
        let mut owners: HashMap<&Element, Retraction> = HashMap::with_capacity(ball.len());
        for (g, r) in ball.iter().zip(retractions) {
            let r = r.map_err(|e| Error::Verification {
                check: "cover",
                witness: format!("{}: {e}", raag.format(g)),
            })?;
            owners.insert(g, r);
        }

        // Disjointness of the tiles that were used.
        let gammas: BTreeSet<&Element> = owners.values().map(|r| &r.gamma).collect();
        let mut tile_of: HashMap<Element, &Element> = HashMap::new();
        for &gamma in &gammas {
            for k in source.vertices() {
                let x = raag.multiply(gamma, k);
                if let Some(other) = tile_of.insert(x.clone(), gamma) {
                    return Err(Error::Verification {
                        check: "overlap",
                        witness: format!(
                            "{} lies in the translates by {} and {}",
                            raag.format(&x),
                            raag.format(other),
                            raag.format(gamma)
                        ),
                    });
                }
            }
        }

        // Path independence of the retraction.
        let alphabet = raag.alphabet();
        let mismatch = exec.find_map_first(&ball, |g| {
            let here = &owners[g];
            for &l in &alphabet {
                let h = raag.multiply_letter(g, l);
                let Some(there) = owners.get(&h) else { continue };
                let mut moved = here.clone();
                let ok = self.step(raag, source, &mut moved, l).is_ok()
                    && moved.gamma == there.gamma
                    && moved.k == there.k;
                if !ok {
                    return Some(h);
                }
            }
            None
        });
        if let Some(h) = mismatch {
            return Err(Error::Verification {
                check: "overlap",
                witness: format!("{} is reached in two tiles", raag.format(&h)),
            });
        }

        let fibre: BTreeSet<Element> = owners
            .iter()
            .filter(|(_, r)| r.gamma.is_identity())
            .map(|(g, _)| (*g).clone())
            .collect();
        let expected: BTreeSet<Element> = source
            .vertices()
            .iter()
            .filter(|k| k.len() <= radius)
            .cloned()
            .collect();
        if fibre != expected {
            let odd = fibre.symmetric_difference(&expected).next().expect("sets differ");
            return Err(Error::Verification {
                check: "fundamental-domain",
                witness: format!("{} is misplaced by r⁻¹(id)", raag.format(odd)),
            });
        }

        self.check_commutation(raag)?;
        let (injectivity_radius, products) = self.check_injectivity(raag, exec)?;
        Ok(VerifyReport {
            radius,
            ball: ball.len(),
            tiles: gammas.len(),
            injectivity_radius,
            products,
        })
    }

    pub fn check_commutation(&self, raag: &Raag) -> Result<()> {
        let graph = self.defining_graph.graph();
        for (i, a) in self.generators.iter().enumerate() {
            for (j, b) in self.generators.iter().enumerate().skip(i + 1) {
                let commute = raag.multiply(&a.element, &b.element) == raag.multiply(&b.element, &a.element);
                if commute != graph.is_adjacent(i, j) {
                    return Err(Error::Verification {
                        check: "commutation",
                        witness: format!(
                            "{} and {} {} but the defining graph says otherwise",
                            raag.format(&a.element),
                            raag.format(&b.element),
                            if commute { "commute" } else { "do not commute" }
                        ),
                    });
                }
            }
        }
        Ok(())
    }

    /// Maps the largest abstract ball that fits the budget into the ambient
    /// group and requires the images to be distinct.
    fn check_injectivity(&self, raag: &Raag, exec: Execution) -> Result<(usize, usize)> {
        let abstract_group = Raag::new(self.defining_graph.graph().clone());
        let mut radius = 0;
        let mut ball = vec![Element::identity()];
        while radius < 3 {
            let next = match abstract_group.cayley_ball_with(radius + 1, exec) {
                Ok(b) if b.len() <= INJECTIVITY_BUDGET => b,
                _ => break,
            };
            ball = next;
            radius += 1;
        }
        let images = exec.map(&ball, |w| {
            let expression: Vec<(usize, i64)> =
                w.letters().iter().map(|l| (l.generator, l.sign())).collect();
            self.evaluate(raag, &expression)
        });
        let mut seen: HashMap<&Element, &Element> = HashMap::with_capacity(images.len());
        for (w, image) in ball.iter().zip(&images) {
            if let Some(prev) = seen.insert(image, w) {
                return Err(Error::Verification {
                    check: "injectivity",
                    witness: format!(
                        "{} and {} both map to {}",
                        abstract_group.format(prev),
                        abstract_group.format(w),
                        raag.format(image)
                    ),
                });
            }
        }
        Ok((radius, ball.len()))
    }

    /// Position of the gate of `g` on the geodesic of `class`, measured from
    /// the class representative.
    fn projection(raag: &Raag, class: &ExtVertex, g: &Element) -> i64 {
        let rel = raag.difference(&class.rep, g);
        let (prefix, _) = raag.parabolic_split(&rel, &BTreeSet::from([class.label]), Side::Left);
        prefix.letters().iter().map(|l| l.sign()).sum()
    }

    /// For each generator, elements of `ball(R)` projecting outside the
    /// interval `[a, a+k]` of its class must not also do so for a
    /// non-adjacent class.
    pub fn check_separation(&self, raag: &Raag, intervals: &[(i64, i64)], radius: usize) -> Result<()> {
        let ball = raag.cayley_ball(radius)?;
        let graph = self.defining_graph.graph();
        for x in &ball {
            let outside: Vec<usize> = self
                .generators
                .iter()
                .zip(intervals)
                .enumerate()
                .filter(|(_, (g, &(lo, hi)))| {
                    let p = Self::projection(raag, &g.class, x);
                    p < lo || p > hi
                })
                .map(|(i, _)| i)
                .collect();
            for (n, &i) in outside.iter().enumerate() {
                if let Some(&j) = outside[n + 1..].iter().find(|&&j| !graph.is_adjacent(i, j)) {
                    return Err(Error::Verification {
                        check: "separation",
                        witness: format!(
                            "{} lies in the sets of {} and {}",
                            raag.format(x),
                            graph.name(i),
                            graph.name(j)
                        ),
                    });
                }
            }
        }
        Ok(())
    }
}

/// `Θ_S(K)`.
pub fn theta(raag: &Raag, complex: &ConvexComplex) -> Result<SpecialSubgroup> {
    if !complex.is_nonnegative(raag) {
        return Err(Error::precondition("complex has a negative coordinate"));
    }
    let widths = complex.widths(raag)?;
    let defining_graph = complex.support_graph(raag);
    let generators = defining_graph
        .vertices()
        .iter()
        .map(|class| {
            let n = widths[class] as u32;
            generator(raag, class.clone(), class.rep.clone(), n)
        })
        .collect();
    Ok(SpecialSubgroup {
        generators,
        defining_graph,
        source: Some(complex.clone()),
        index: Some(complex.len()),
    })
}

/// Subgroup generated by `r·s^{k+1}·r⁻¹` for each class `(s, r)` of `M`,
/// where `[a, a+k]` spans the projections of the classes of `M` not adjacent
/// to it. Returns the subgroup and the intervals.
pub fn embed_from_ext_subcomplex(
    raag: &Raag,
    classes: &BTreeSet<ExtVertex>,
) -> (SpecialSubgroup, Vec<(i64, i64)>) {
    let defining_graph = raag.ext_graph(classes.clone(), Execution::default());
    let list = defining_graph.vertices();
    let mut intervals = Vec::with_capacity(list.len());
    let generators = list
        .iter()
        .enumerate()
        .map(|(i, class)| {
            let projections: Vec<i64> = list
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i && !defining_graph.graph().is_adjacent(i, j))
                .map(|(_, other)| SpecialSubgroup::projection(raag, class, &other.rep))
                .collect();
            let lo = projections.iter().copied().min().unwrap_or(0);
            let hi = projections.iter().copied().max().unwrap_or(0);
            intervals.push((lo, hi));
            generator(raag, class.clone(), class.rep.clone(), (hi - lo + 1) as u32)
        })
        .collect();
    let sub = SpecialSubgroup {
        generators,
        defining_graph,
        source: None,
        index: None,
    };
    (sub, intervals)
}
