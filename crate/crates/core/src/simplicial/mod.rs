//! Finite simplicial sets, their morphisms, standard objects and subset
//! algebra.

mod map;
mod set;
mod simplex;
pub mod standard;
mod subset;
pub mod text;

pub use map::SimplicialMap;
pub use set::{disjoint_union, Generator, SimplicialSet, ValidationReport, Violation};
pub use simplex::{codegeneracy, coface, DegeneracyWord, Simplex, SimplexRef};
pub use standard::{boundary_inclusion, boundary_simplex, horn, standard_map, standard_simplex, terminal_map};
pub use subset::{intersect_subsets, GeneratorSubset};

