//! Towers `A = A₋₁ ⊆ A₀ ⊆ … ⊆ A_N → B` built by attaching one cell per
//! commutative square, the maps of towers they induce, and checks of the
//! subcomplex, intersection and variant properties.

mod checks;
pub mod io;
mod tower;
mod tower_map;

pub use checks::{
    check_intersection, check_subcomplex, check_variant_coincidence, IntersectionReport,
    IntersectionStage, SubcomplexReport,
};
pub use tower::{build_tower, cellular_variant_filter, is_cellular, GrowthRow, Tower, Variant};
pub use tower_map::{induced_tower_map, TowerMap};
