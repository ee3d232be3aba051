//! Combinatorial machinery for right-angled Artin groups.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`] holds finite simple graphs with link/star queries, join
//!   decompositions and canonical labelling.
//! * [`word`] implements exact arithmetic in `G(Γ)` (normal forms, metrics,
//!   parabolic projections, the ℓ¹ coordinate embedding, Cayley balls).
//! * [`extension`] encodes vertices of the extension graph as
//!   `(label, minimal coset representative)` pairs and builds finite windows.
//! * [`out_analysis`] and [`stability`] evaluate the closed-form graph criteria
//!   for Out-finiteness, transvections, partial conjugations and stable cliques.
//! * [`convex`], [`subgroup`] and [`gse`] build finite-index special subgroups
//!   from convex complexes and search generalized star extensions.

pub mod convex;
mod error;
pub mod exec;
pub mod extension;
pub mod graph;
pub mod gse;
pub mod out_analysis;
pub mod stability;
pub mod subgroup;
pub mod word;

pub use convex::ConvexComplex;
pub use error::{Error, Result};
pub use exec::Execution;
pub use extension::{ExtGraph, ExtVertex};
pub use graph::{CanonicalForm, SimplicialGraph, VertexSet};
pub use gse::{GseState, QiVerdict};
pub use out_analysis::OutProfile;
pub use subgroup::SpecialSubgroup;
pub use word::{Element, Letter, Raag};

/// Size limits guarding the enumerations that grow exponentially.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest radius accepted by Cayley-ball and truncation requests.
    pub max_radius: usize,
    /// Largest number of elements a single ball may hold.
    pub max_ball: usize,
    /// Largest graph accepted by canonical labelling.
    pub max_canonical_vertices: usize,
    /// Largest vertex set accepted by convexity validation.
    pub max_complex: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_radius: 6,
            max_ball: 2_000_000,
            max_canonical_vertices: 24,
            max_complex: 512,
        }
    }
}
