//! Exact arithmetic for even integer lattices.
//!
//! This crate provides the foundation layer of the workspace: Gram-matrix
//! lattices with exact (arbitrary-precision rational) linear algebra, Hermite
//! and Smith normal forms, saturation and orthogonal complements, discriminant
//! group extraction, and deterministic norm/product-constrained short-vector
//! enumeration (LLL preprocessing + Fincke–Pohst backtracking with exact
//! acceptance checks).

pub mod enumerate;
pub mod lattice;
pub mod mat;

pub use lattice::{
    rat_mod, solve_integer_system, sublattice_to_json, DiscriminantData, IntegerLattice,
    LatticeVector, Sublattice,
};
pub use mat::{IMat, QMat, QVec};

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("degenerate lattice")]
    Degenerate,
    #[error("gram matrix is not symmetric")]
    NotSymmetric,
    #[error("lattice is not even")]
    NotEven,
    #[error("form is not definite")]
    NotDefinite,
    #[error("unbounded enumeration")]
    Unbounded,
    #[error("integer overflow guard tripped")]
    Overflow,
    #[error("sublattice is not contained in the ambient lattice")]
    NotContained,
    #[error("{0}")]
    Invalid(String),
}
