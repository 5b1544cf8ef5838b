//! Inputs shared by the benchmarks.

use std::sync::Arc;

use cwapprox::simplicial::{boundary_simplex, standard_simplex};
use cwapprox::SimplicialMap;

/// `∅ → B` for the named target: `point`, `edge`, `circle`, `triangle` or
/// `sphere`.
pub fn from_empty(target: &str) -> SimplicialMap {
    let b = match target {
        "point" => standard_simplex(0),
        "edge" => standard_simplex(1),
        "circle" => boundary_simplex(2).expect("n >= 1"),
        "triangle" => standard_simplex(2),
        "sphere" => boundary_simplex(3).expect("n >= 1"),
        other => panic!("unknown bench input {other}"),
    };
    SimplicialMap::from_empty(Arc::new(b))
}
