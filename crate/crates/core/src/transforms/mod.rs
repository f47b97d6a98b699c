//! Versors, null polarities and projective matrices.

pub mod factor;
pub mod matrix;
pub mod polarity;
pub mod versor;

pub use factor::{decompose_null_polarities, linemap_to_reflections, matrix_to_versor};
pub use matrix::{matrix_to_linemap6, versor_to_matrix, Kind, LineMap6, ProjMatrix4};
pub use polarity::{vector_to_linemap6, NullPolarity};
pub use versor::{
    grade1_closure_check, null_versor_compose, sandwich, versor_normalize, Closure, Normalized,
    Parity, Versor,
};
