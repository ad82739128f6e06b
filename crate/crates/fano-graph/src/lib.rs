//! Multigraphs on conic sets: two vertices are joined by an edge of
//! multiplicity 2 − (l₁·l₂), so multiplicities lie in {0, 1, 2} for
//! sextic (d = 3) configurations. The crate provides canonical labeling
//! of such edge-colored graphs by individualization–refinement,
//! isomorphism testing via canonical certificates, and the order of the
//! edge-colored automorphism group.

mod canon;
mod graph;
mod perm;

pub use canon::{CanonicalForm, Certificate};
pub use graph::{FanoGraph, GraphError};
pub use perm::group_order;
