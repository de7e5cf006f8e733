//! Exact construction, verification and classification of vector product
//! algebras (dimensions 0, 1, 3 and 7) and the unital composition algebras
//! attached to them, over the rationals and prime fields of odd
//! characteristic.

// Structure constants are indexed by several basis indices at once.
#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod classify;
pub mod doubling;
pub mod error;
pub mod field;
pub mod forms;
pub mod hurwitz;
pub mod io;
pub mod linalg;
pub mod sample;

pub use algebra::{AxiomReport, VectorProductAlgebra};
pub use classify::{build_isomorphism, IsoVerdict, Morphism};
pub use error::{Error, Result};
pub use field::{FieldSpec, Scalar};
pub use forms::{GramForm, Subspace};
pub use hurwitz::UnitalCompositionAlgebra;
pub use linalg::{Matrix, Vector};
