//! Exact arithmetic for homotopes of finite-dimensional algebras and
//! trilinear tensors.
//!
//! Scalars are exact (rationals or residues modulo a prime). On top of them
//! sit dense matrices, sparse polynomials, sparse trilinear tensors, and
//! algebras given by structure constants. The [`fingerprints`] module holds
//! finite-field censuses that separate isomorphism classes, and [`verify`]
//! runs the fixed battery of checks exposed by `homotopelab paper-verify`.

pub mod algebra;
pub mod constructions;
pub mod error;
pub mod fingerprints;
pub mod io;
pub mod linalg;
mod modp;
pub mod poly;
pub mod scalar;
pub mod tensor;
pub mod verify;

pub use algebra::{Algebra, Element};
pub use error::{Error, Result};
pub use linalg::{LinearMap, Matrix};
pub use poly::{BinaryQuartic, Polynomial};
pub use scalar::{FieldSpec, Scalar};
pub use tensor::{HomotopyTriple, Trilinear};
