//! Exact 2-crossed modules of commutative algebras, the algebras of
//! simplices they define, and the homotopy 2-groupoid of maps between them.
//!
//! Scalars are exact (rationals or residues mod a prime). Every law is
//! checked by evaluation and reported as a [`CheckReport`] value.

pub mod action;
pub mod algebra;
pub mod crossed;
pub mod error;
pub mod fixtures;
pub mod homotopy;
pub mod homotopy2;
pub mod linalg;
pub mod maps;
pub mod random;
pub mod report;
pub mod scalar;
pub mod simplex;
pub mod structure;
pub mod suite;

pub use action::Action;
pub use algebra::{Algebra, Element, Monomial};
pub use crossed::{CrossedModule, PreCrossedModule, TwoCrossedMap, TwoCrossedModule};
pub use error::{Error, Result};
pub use maps::{AlgebraMorphism, BilinearMap, LinearMap};
pub use report::CheckReport;
pub use scalar::{Field, Scalar};
