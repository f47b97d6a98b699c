//! Clifford algebra Cl(3,3) on the Witt basis.

pub mod basis;
pub mod multivector;
pub(crate) mod table;

pub use basis::{metric, BasisBlade, BLADES, DIM};
pub use multivector::{Involution, Multivector};
