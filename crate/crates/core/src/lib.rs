//! Exact computations with weakly symmetric algebras presented by quivers
//! with relations: normal forms, modules, two-term tilting complexes,
//! combinatorial tilting mutation at a loopless vertex and mutation of
//! maximal systems of orthogonal bricks in the stable module category.

pub mod algebra;
pub mod error;
pub mod fixtures;
pub mod grammar;
pub mod groebner;
pub mod homotopy;
pub mod json;
pub mod linalg;
pub mod module;
pub mod msob;
pub mod mutation;
pub mod quiver;
pub mod scalar;
pub mod stable;

pub use algebra::{FdAlgebra, ValidationReport};
pub use error::{Error, Result};
pub use groebner::NormalFormTable;
pub use quiver::{Path, PathComb, Presentation, Quiver};
pub use scalar::{Field, Scalar};
