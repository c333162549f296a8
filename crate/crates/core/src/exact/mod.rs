//! Exact linear algebra over the integers.

mod chain;
mod group;
mod matrix;
mod snf;
pub mod sparse;

pub use chain::{is_short_exact, long_exact_sequence, ChainComplex, ExactnessNode, Homology, LongExactSequence};
pub use group::{basis_vectors, hom_group, is_exact_at, AbGroup, AbHom, Canonical, HomGroup, Subgroup};
pub use matrix::{unit_vec, zero_vec, Matrix};
pub use snf::{determinant, image_basis, kernel_basis, smith_normal_form, LatticeSolver, SmithForm};
