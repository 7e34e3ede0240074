//! Relation Gelfand-Tsetlin modules over finite W-algebras of type A.
//!
//! The crate builds the modules `V_C([l])` attached to admissible relation
//! sets, decides admissibility combinatorially, checks the defining relations
//! of the shifted Yangian on explicit basis windows, and probes irreducibility
//! of tensor products of evaluation modules over `Y(gl_n)`. All arithmetic is
//! exact.

pub mod error;
pub mod exact_arith;
pub mod gt_module;
pub mod linalg;
pub mod pyramid;
pub mod relations;
pub mod tableau;
pub mod yangian_tensor;

pub use error::{Error, Result};
