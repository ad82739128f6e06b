//! The 24 positive-definite even unimodular lattices of rank 24: the 23
//! root-full Niemeier lattices (built from their root systems and glue
//! codes) and the Leech lattice (built from the binary Golay code), along
//! with the named square-12 polarization vectors used by the conic
//! counts.

pub mod glue;
pub mod golay;
pub mod hbar;
pub mod leech;
pub mod niemeier;
pub mod replant;
pub mod root;

pub use glue::{span_words, word_add, word_min_norm, GlueWord};
pub use golay::{GolayCode, TernaryGolayCode};
pub use hbar::{hbar, hbar_ids, HbarData};
pub use leech::build_leech;
pub use niemeier::{build_niemeier, catalog_names, NiemeierLattice};
pub use replant::{replant, Replanted};
pub use root::{RootKind, RootSystemComponent};

#[derive(Debug, thiserror::Error)]
pub enum CatalogError {
    #[error("unknown lattice name: {0}")]
    UnknownName(String),
    #[error("unknown polarization id: {0}")]
    UnknownHbar(String),
    #[error("glue data invalid for {name}: {reason}")]
    BadGlue { name: String, reason: String },
    #[error("lattice validation failed for {name}: {reason}")]
    BadLattice { name: String, reason: String },
    #[error("polarization data invalid for {id}: {reason}")]
    BadHbar { id: String, reason: String },
    #[error("replanting failed: {0}")]
    Replant(String),
    #[error(transparent)]
    Lattice(#[from] lattice_core::LatticeError),
}
