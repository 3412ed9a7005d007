//! Exact lattice-point algorithms for special ample polytopes on the toric
//! varieties whose fan is the Weyl fan of a root system.

pub mod diagsplit;
pub mod error;
pub mod instances;
pub mod lattice;
pub mod normality;
pub mod numbers_game;
pub mod polytope;
pub mod quadraticity;
pub mod polytope_file;
pub mod root_system;
pub mod tuples;
pub mod verify;

pub use error::{Error, Result};
pub use polytope_file::PolytopeFile;
pub use polytope::{LatticePointSet, OrthogonalSet, Validation};
pub use lattice::{Coords, IntMatrix, RootVec, Weight};
pub use root_system::{CartanSpec, Family, LengthClass, RootData, RootSystem, WeylElement, WeylId};
