//! Exact computation of equivariant homology theories built from Mackey
//! functors and finite simplicial G-sets.

pub mod coalesce;
pub mod error;
pub mod exact;
pub mod grp;
pub mod homotopy;
pub mod gset;
pub mod io;
pub mod mackey;
pub mod sgset;
pub mod tensor;

pub use error::{Error, Result};
