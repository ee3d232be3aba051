//! Generalized star extensions on concrete states `(Γ_i, K_i)` inside the
//! cube complex, their abstract (graph-only) counterpart, reachability search
//! with canonical deduplication, and the quasi-isometry decision built on it.
//!
//! A step at a class `v = (s, r)` takes the vertices of `K` in the coset
//! `r·G(St(s))`, finds those with the largest `v`-coordinate and pushes them
//! one unit in the positive `s` direction. The new classes are the
//! translates by `g_v = r·s·r⁻¹` of the classes seen from that top slice.

mod cache;

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Value};

use crate::convex::ConvexComplex;
use crate::extension::{ExtGraph, ExtVertex};
use crate::graph::{automorphisms, canonical_form, induced_copy_cover, CanonicalForm, SimplicialGraph};
use crate::out_analysis::out_profile;
use crate::subgroup::{theta, SpecialSubgroup};
use crate::word::{Element, Raag};
use crate::{Error, Execution, Result};

pub use cache::SearchCache;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GseState {
    complex: ConvexComplex,
    support: ExtGraph,
    history: Vec<(ExtVertex, bool)>,
}

impl GseState {
    /// `({id}, Γ)`.
    pub fn initial(raag: &Raag) -> Self {
        let complex = ConvexComplex::point();
        let support = complex.support_graph(raag);
        GseState {
            complex,
            support,
            history: Vec::new(),
        }
    }

    pub fn complex(&self) -> &ConvexComplex {
        &self.complex
    }

    pub fn support(&self) -> &ExtGraph {
        &self.support
    }

    /// Chosen classes with their nontriviality flags.
    pub fn history(&self) -> &[(ExtVertex, bool)] {
        &self.history
    }

    pub fn steps(&self) -> Vec<ExtVertex> {
        self.history.iter().map(|(v, _)| v.clone()).collect()
    }

    pub fn nontrivial_steps(&self) -> usize {
        self.history.iter().filter(|(_, n)| *n).count()
    }

    /// Applies steps given by `label@rep` names, in order.
    pub fn apply(self, raag: &Raag, steps: &[&str]) -> Result<Self> {
        steps.iter().try_fold(self, |state, name| {
            let v = raag.parse_ext_vertex(name)?;
            Ok(gse_step(raag, &state, &v)?.0)
        })
    }

    /// Re-derives everything the state promises about itself.
    pub fn check_invariants(&self, raag: &Raag) -> Result<()> {
        let fail = |witness: String| Error::Verification {
            check: "state",
            witness,
        };
        let revalidated = ConvexComplex::validate(raag, self.complex.to_vec())?;
        if !revalidated.is_nonnegative(raag) {
            return Err(fail("complex has a negative coordinate".into()));
        }
        if self.complex.support_graph(raag) != self.support {
            return Err(fail("support differs from the recomputed support".into()));
        }
        let covered: BTreeSet<ExtVertex> = self
            .complex
            .vertices()
            .iter()
            .flat_map(|x| raag.local_complex(x))
            .collect();
        if let Some(v) = self.support.vertices().iter().find(|v| !covered.contains(v)) {
            return Err(fail(format!("{} lies in no local copy", raag.ext_name(v))));
        }
        Ok(())
    }

    pub fn to_json(&self, raag: &Raag) -> Value {
        json!({
            "steps": self.history.iter().map(|(v, n)| json!({
                "class": raag.ext_name(v),
                "nontrivial": n,
            })).collect::<Vec<_>>(),
            "complex": self.complex.vertices().iter().map(|g| raag.format(g)).collect::<Vec<_>>(),
            "support": self.support.graph().to_json_value(),
        })
    }
}

/// Slab of `K` along `v` and its top slice.
fn top_slice(raag: &Raag, complex: &ConvexComplex, v: &ExtVertex) -> Vec<Element> {
    let slab: Vec<(&Element, i64)> = complex
        .vertices()
        .iter()
        .filter(|x| raag.coset_rep(x, v.label) == v.rep)
        .map(|x| (x, raag.coordinate(x, v)))
        .collect();
    let top = slab.iter().map(|(_, c)| *c).max().expect("v meets K");
    slab.into_iter()
        .filter(|(_, c)| *c == top)
        .map(|(x, _)| x.clone())
        .collect()
}

fn require_member(raag: &Raag, state: &GseState, v: &ExtVertex) -> Result<()> {
    if state.support.contains(v) {
        Ok(())
    } else {
        Err(Error::input(format!(
            "{} is not a vertex of the current support",
            raag.ext_name(v)
        )))
    }
}

/// One generalized star extension at `v`. Returns the new state and whether
/// the support grew.
pub fn gse_step(raag: &Raag, state: &GseState, v: &ExtVertex) -> Result<(GseState, bool)> {
    require_member(raag, state, v)?;
    let pushed = top_slice(raag, &state.complex, v)
        .into_iter()
        .map(|x| raag.multiply(&x, &raag.generator(v.label)));
    let vertices: Vec<Element> = state.complex.vertices().iter().cloned().chain(pushed).collect();
    let complex = ConvexComplex::validate(raag, vertices)?;
    let support = complex.support_graph(raag);
    let nontrivial = support.len() > state.support.len();
    let mut history = state.history.clone();
    history.push((v.clone(), nontrivial));
    Ok((
        GseState {
            complex,
            support,
            history,
        },
        nontrivial,
    ))
}

/// `g·(t, q)`.
fn translate(raag: &Raag, g: &Element, u: &ExtVertex) -> ExtVertex {
    raag.make_vertex(&raag.multiply(g, &u.rep), u.label)
}

/// The graph-level form of a step: `Γ_v` is the union of the copies `Φ(x)`
/// through `v`, and `Γ_i` is glued with the one component of
/// `Γ_v ∖ St(v, Γ_v)` whose `g_v`-translate is new, along `St(v, Γ_v)`.
pub fn gse_step_simplified(raag: &Raag, state: &GseState, v: &ExtVertex) -> Result<ExtGraph> {
    require_member(raag, state, v)?;
    let copies: Vec<BTreeSet<ExtVertex>> = state
        .complex
        .vertices()
        .iter()
        .map(|x| raag.local_complex(x))
        .filter(|phi| phi.contains(v))
        .collect();
    let mut vertices: BTreeSet<ExtVertex> = BTreeSet::new();
    let mut edges: BTreeSet<(ExtVertex, ExtVertex)> = BTreeSet::new();
    for phi in &copies {
        // Each Φ(x) is a labelled copy of Γ: edges follow the labels.
        for a in phi {
            for b in phi.range(a..).skip(1) {
                if raag.commute(a.label, b.label) {
                    edges.insert((a.clone(), b.clone()));
                }
            }
        }
        vertices.extend(phi.iter().cloned());
    }
    let gamma_v = ExtGraph::from_parts(raag, vertices, edges.iter().cloned())?;
    let graph = gamma_v.graph();
    let centre = gamma_v.index_of(v).expect("v in every copy");
    let star = graph.star(centre);
    let g_v = raag.conjugate_power(&v.rep, v.label, 1);
    let existing = state.support.vertex_set();

    let fresh: Vec<BTreeSet<usize>> = graph
        .complement_components(&star)
        .into_iter()
        .filter(|c| {
            c.iter()
                .all(|&i| !existing.contains(&translate(raag, &g_v, &gamma_v.vertices()[i])))
        })
        .collect();
    let glued = match fresh.as_slice() {
        [] => BTreeSet::new(),
        [one] => one.clone(),
        _ => {
            return Err(Error::Verification {
                check: "simplified-gse",
                witness: format!(
                    "{} components of Γ_v minus St({}) have new translates",
                    fresh.len(),
                    raag.ext_name(v)
                ),
            })
        }
    };

    let mut new_vertices = existing;
    let mut new_edges = state.support.edge_pairs();
    for &i in &glued {
        new_vertices.insert(translate(raag, &g_v, &gamma_v.vertices()[i]));
    }
    for (a, b) in graph.edges() {
        if glued.contains(&a) || glued.contains(&b) {
            let (x, y) = (&gamma_v.vertices()[a], &gamma_v.vertices()[b]);
            new_edges.insert((translate(raag, &g_v, x), translate(raag, &g_v, y)));
        }
    }
    ExtGraph::from_parts(raag, new_vertices, new_edges)
}

/// Search bounds for [`enumerate_reachable`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_nontrivial: usize,
    pub max_total: usize,
    /// States whose support exceeds this many vertices are dropped. Supports
    /// only grow, so nothing below the bound is lost.
    pub max_support: Option<usize>,
    /// Stop after the first level that reaches this support.
    pub target: Option<CanonicalForm>,
}

impl Budget {
    pub fn new(max_nontrivial: usize, max_total: usize) -> Self {
        Budget {
            max_nontrivial,
            max_total,
            max_support: None,
            target: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Census {
    /// One witness per support isomorphism class, sorted by canonical form.
    pub reached: BTreeMap<CanonicalForm, GseState>,
    /// Distinct states visited up to symmetry, in discovery order.
    pub explored: Vec<GseState>,
    /// Some state had children that a step budget cut off.
    pub truncated: bool,
}

type StateKey = (CanonicalForm, Vec<Element>);

struct Keyer {
    automorphisms: Vec<Vec<usize>>,
}

impl Keyer {
    fn key(&self, raag: &Raag, state: &GseState) -> Result<StateKey> {
        let form = canonical_form(state.support.graph())?;
        let complex = self
            .automorphisms
            .iter()
            .map(|map| {
                let mut image: Vec<Element> = state
                    .complex
                    .vertices()
                    .iter()
                    .map(|g| raag.relabel(g, map))
                    .collect();
                image.sort();
                image
            })
            .min()
            .expect("identity automorphism");
        Ok((form, complex))
    }
}

fn require_searchable(graph: &SimplicialGraph) -> Result<()> {
    if graph.len() < 2 {
        return Err(Error::precondition("graph has fewer than two vertices"));
    }
    if !graph.is_connected() {
        return Err(Error::precondition("graph is disconnected"));
    }
    Ok(())
}

/// Breadth-first search over states reachable from `({id}, Γ)`.
pub fn enumerate_reachable(raag: &Raag, budget: &Budget, exec: Execution) -> Result<Census> {
    require_searchable(raag.graph())?;
    let keyer = Keyer {
        automorphisms: automorphisms(raag.graph(), 100_000)?,
    };
    let start = GseState::initial(raag);
    let mut seen: BTreeSet<StateKey> = BTreeSet::new();
    let mut reached: BTreeMap<CanonicalForm, GseState> = BTreeMap::new();
    let start_key = keyer.key(raag, &start)?;
    reached.insert(start_key.0.clone(), start.clone());
    seen.insert(start_key);
    let mut explored = vec![start.clone()];
    let mut frontier = vec![start];
    let mut truncated = false;
    let mut depth = 0;

    let within = |s: &GseState| budget.max_support.is_none_or(|m| s.support.len() <= m);

    while !frontier.is_empty() {
        if let Some(target) = &budget.target {
            if reached.contains_key(target) {
                break;
            }
        }
        let children = exec.map(&frontier, |state| -> Result<Vec<(StateKey, GseState)>> {
            let mut out = Vec::new();
            for v in state.support.vertices() {
                let (child, _) = gse_step(raag, state, v)?;
                if within(&child) {
                    out.push((keyer.key(raag, &child)?, child));
                }
            }
            Ok(out)
        });
        let mut next = Vec::new();
        for batch in children {
            for (key, child) in batch? {
                if seen.contains(&key) {
                    continue;
                }
                if depth + 1 > budget.max_total || child.nontrivial_steps() > budget.max_nontrivial {
                    truncated = true;
                    continue;
                }
                reached.entry(key.0.clone()).or_insert_with(|| child.clone());
                seen.insert(key);
                explored.push(child.clone());
                next.push(child);
            }
        }
        frontier = next;
        depth += 1;
    }
    Ok(Census {
        reached,
        explored,
        truncated,
    })
}

// Verdicts are produced once per decision; boxing the witness buys nothing.
#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug)]
pub enum QiVerdict {
    Yes {
        witness: GseState,
        subgroup: SpecialSubgroup,
    },
    No {
        reason: String,
    },
    Inconclusive {
        reason: String,
    },
}

impl QiVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            QiVerdict::Yes { .. } => "YES",
            QiVerdict::No { .. } => "NO",
            QiVerdict::Inconclusive { .. } => "INCONCLUSIVE",
        }
    }

    /// `YES (1 step)`, `NO (pre-filter: ...)`, ...
    pub fn summary(&self) -> String {
        match self {
            QiVerdict::Yes { witness, .. } => {
                let n = witness.history().len();
                format!("YES ({n} step{})", if n == 1 { "" } else { "s" })
            }
            QiVerdict::No { reason } => format!("NO ({reason})"),
            QiVerdict::Inconclusive { reason } => format!("INCONCLUSIVE ({reason})"),
        }
    }

    pub fn to_json(&self, raag: &Raag) -> Value {
        match self {
            QiVerdict::Yes { witness, subgroup } => json!({
                "verdict": "YES",
                "witness": witness.to_json(raag),
                "subgroup": subgroup.to_json(raag),
            }),
            QiVerdict::No { reason } => json!({"verdict": "NO", "reason": reason}),
            QiVerdict::Inconclusive { reason } => json!({"verdict": "INCONCLUSIVE", "reason": reason}),
        }
    }
}

/// Default total-step budget for a target graph.
pub fn default_max_total(target: &SimplicialGraph) -> usize {
    3 * target.len()
}

/// Is `G(target)` quasi-isometric to `G(Γ)`, by searching for `target` among
/// the supports of reachable states?
pub fn qi_decide(raag: &Raag, target: &SimplicialGraph, max_total: usize) -> Result<QiVerdict> {
    qi_decide_with(raag, target, max_total, Execution::default())
}

pub fn qi_decide_with(
    raag: &Raag,
    target: &SimplicialGraph,
    max_total: usize,
    exec: Execution,
) -> Result<QiVerdict> {
    let graph = raag.graph();
    require_searchable(graph)?;
    require_searchable(target)?;
    if !out_profile(graph).finite {
        return Err(Error::precondition(
            "Out(G(Γ)) is infinite (transvection or separating star present)",
        ));
    }
    if graph.clique_number() != target.clique_number() {
        return Ok(QiVerdict::No {
            reason: format!(
                "pre-filter: clique numbers differ ({} vs {})",
                graph.clique_number(),
                target.clique_number()
            ),
        });
    }
    let cover = induced_copy_cover(graph, target);
    if cover.is_empty() {
        return Ok(QiVerdict::No {
            reason: "pre-filter: no induced copy of Γ".into(),
        });
    }
    if let Some(v) = target.vertices().find(|v| !cover.contains(v)) {
        return Ok(QiVerdict::No {
            reason: format!("pre-filter: vertex {} lies in no induced copy of Γ", target.name(v)),
        });
    }
    let form = canonical_form(target)?;
    let budget = Budget {
        max_nontrivial: target.len(),
        max_total,
        max_support: Some(target.len()),
        target: Some(form.clone()),
    };
    let census = enumerate_reachable(raag, &budget, exec)?;
    if let Some(witness) = census.reached.get(&form) {
        let subgroup = theta(raag, witness.complex())?;
        return Ok(QiVerdict::Yes {
            witness: witness.clone(),
            subgroup,
        });
    }
    if census.truncated {
        Ok(QiVerdict::Inconclusive {
            reason: format!("step budget {max_total} reached after {} states", census.explored.len()),
        })
    } else {
        Ok(QiVerdict::No {
            reason: format!(
                "search exhausted: none of {} states has a support isomorphic to the target",
                census.explored.len()
            ),
        })
    }
}

/// Rebuilds a verdict from its JSON form by replaying the witness steps.
pub fn verdict_from_json(raag: &Raag, value: &Value) -> Result<QiVerdict> {
    let text = |key: &str| -> Result<String> {
        value[key]
            .as_str()
            .map(str::to_owned)
            .ok_or_else(|| Error::input(format!("verdict JSON lacks {key:?}")))
    };
    match text("verdict")?.as_str() {
        "YES" => {
            let steps: Vec<String> = value["witness"]["steps"]
                .as_array()
                .ok_or_else(|| Error::input("verdict JSON lacks witness steps"))?
                .iter()
                .map(|s| s["class"].as_str().unwrap_or_default().to_owned())
                .collect();
            let names: Vec<&str> = steps.iter().map(String::as_str).collect();
            let witness = GseState::initial(raag).apply(raag, &names)?;
            let subgroup = theta(raag, witness.complex())?;
            Ok(QiVerdict::Yes { witness, subgroup })
        }
        "NO" => Ok(QiVerdict::No {
            reason: text("reason")?,
        }),
        "INCONCLUSIVE" => Ok(QiVerdict::Inconclusive {
            reason: text("reason")?,
        }),
        other => Err(Error::input(format!("unknown verdict {other:?}"))),
    }
}
