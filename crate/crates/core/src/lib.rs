//! Homogeneous components of the relatively free algebra of the cube identity
//! in three-fold nilpotency, together with the invariant generating systems
//! of 3x3 matrices they describe.

pub mod certificates;
pub mod cli;
pub mod coeffs;
pub mod composition;
pub mod elements;
pub mod invariants;
pub mod linalg;
pub mod nilpotency;
pub mod tables;
pub mod words;

pub use coeffs::{FieldSpec, Scalar};
pub use elements::Element;
pub use linalg::EchelonSystem;
pub use words::{Multidegree, Word};
