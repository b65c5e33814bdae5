//! Exact computations with L∞ structures on small ℤ₂-graded spaces:
//! codifferentials on the symmetric coalgebra, their cohomology,
//! miniversal deformations and the classification of 0|3 structures.

pub mod algebra;
pub mod classify;
pub mod cochain;
pub mod cohomology;
pub mod deform;
pub mod error;
pub mod linalg;
pub mod superspace;
pub mod text;

pub use error::{Error, Result};
