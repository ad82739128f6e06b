//! The dictionary between hyperbolic 2d-polarized lattices NS ∋ h (Néron–
//! Severi data of a polarized K3 surface) and positive definite polarized
//! lattices S ∋ ħ with ħ² = 2d(d−1): the reduction S = −(h⊥ ⊕ Zħ)~ and its
//! inverse hyperbolic models hp₀ / hp_κ, line and conic enumeration,
//! irreducibility, the homological conditions on NS ⊂ 𝐋, and the local
//! discriminant-form relations tying 𝒮 to 𝒩.

mod enumerate;
mod instances;
mod maps;
mod polarized;
mod reduce;
mod relations;

pub use enumerate::{
    classify_irreducible, enumerate_fn, pair_products, HomologicalReport, IrreducibleSplit,
};
pub use instances::{random_polarized_definite, random_polarized_hyperbolic};
pub use maps::coords_in_basis;
pub use polarized::{PolarizationType, PolarizedDefinite, PolarizedHyperbolic};
pub use reduce::{hyp, hyp_candidates, reduce, HypModel, Reduction};
pub use relations::{check_discriminant_relations, DiscriminantRelationReport};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum K3Error {
    #[error("empty conic set")]
    EmptyConicSet,
    #[error("lattice is not hyperbolic (signature sigma+ != 1)")]
    NotHyperbolic,
    #[error("lattice is not positive definite")]
    NotPositiveDefinite,
    #[error("invalid polarization: {0}")]
    BadPolarization(String),
    #[error("invalid kappa: {0}")]
    InvalidKappa(String),
    #[error("pair product {0} outside the admissible range for d = {1}")]
    ProductRange(i64, i64),
    #[error("vector is not a conic of the configuration")]
    NotAConic,
    #[error(transparent)]
    Lattice(#[from] lattice_core::LatticeError),
    #[error(transparent)]
    Form(#[from] discriminant_forms::FormError),
}
