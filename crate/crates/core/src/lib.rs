//! Exact line geometry of real projective 3-space in the Clifford algebra
//! Cl(3,3).
//!
//! Lines of P³ are null vectors of the algebra via their Plücker coordinates,
//! null blades are the linear subspaces of the Klein quadric (pencils,
//! bundles, fields), and projective collineations and correlations act as
//! versor sandwiches. All arithmetic is over arbitrary-precision rationals.

pub mod error;
pub mod ga;
pub mod grassmann;
pub mod incidence;
pub mod linalg;
pub mod lines;
pub mod rational;
#[rustfmt::skip]
pub mod reference;
pub mod selftest;
pub mod transforms;

pub use error::{Error, Result};
pub use ga::{BasisBlade, Involution, Multivector};
pub use rational::Rational;
