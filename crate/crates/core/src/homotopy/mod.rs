//! Normalized chains, Bredon homology as a Mackey functor, equivariant
//! mapping complexes, `π_V`, the Ω-spectrum comparison and graded tables.

mod chains;
mod mapping;
mod graded;
mod les;
mod omega;
mod whcg;

pub use chains::{bredon_homology, chains_at, normalized_chains, MackeyChainComplex};
pub use mapping::{homotopy_classes, mapping_complex, sphere_of, CellSet, MappingComplex, Summand};
pub use graded::{ro_graded_table, GradedRow, GradedTable};
pub use les::homology_les;
pub use omega::{omega_spectrum_check, phi_chain_map, OmegaReport, OmegaRow, PhiMap};
pub use whcg::{weyl_mapping_complex, whcg_check, WeylMappingComplex, WhcgReport, WhcgRow};
