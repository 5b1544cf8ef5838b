//! Functorial cell-attachment towers over finite simplicial sets.
//!
//! Given a map `f: A → B` of finite simplicial sets, [`build_tower`] factors
//! it as `A ⊆ A₀ ⊆ A₁ ⊆ … ⊆ A_N → B`, where `A_n` is obtained from
//! `A_{n-1}` by attaching one `n`-cell along `∂Δⁿ ⊆ Δⁿ` for *every*
//! commutative square
//!
//! ```text
//!   ∂Δⁿ ──α──▶ A_{n-1}
//!    │            │
//!    ▼            ▼
//!    Δⁿ ──β──▶    B
//! ```
//!
//! Because no choices are made, a commutative square of maps induces a map
//! of towers ([`induced_tower_map`]) and the construction is a functor.
//! Homology over ℤ is available in [`homology`] for checking connectivity
//! of the stage projections.
//!
//! ```
//! use std::sync::Arc;
//! use cwapprox::homology::homology;
//! use cwapprox::simplicial::standard_simplex;
//! use cwapprox::{build_tower, Budget, SimplicialMap, Variant};
//!
//! let point = Arc::new(standard_simplex(0));
//! let f = SimplicialMap::from_empty(point);
//! let tower = build_tower(&f, 2, Variant::AllMaps, &mut Budget::default())?;
//! assert_eq!(tower.stage(2).counts(), vec![1, 1, 8]);
//! assert_eq!(homology(tower.stage(2), 2).betti, 7);
//! # Ok::<(), cwapprox::Error>(())
//! ```

pub mod colimits;
pub mod error;
pub mod factorization;
pub mod hom_search;
pub mod homology;
pub mod simplicial;

pub use error::{Error, Result};
pub use factorization::{
    build_tower, check_intersection, check_subcomplex, check_variant_coincidence,
    induced_tower_map, Tower, TowerMap, Variant,
};
pub use hom_search::{enumerate_maps, enumerate_squares, AttachmentSquare, Budget, DEFAULT_BUDGET};
pub use simplicial::{
    DegeneracyWord, GeneratorSubset, Simplex, SimplexRef, SimplicialMap, SimplicialSet,
};
