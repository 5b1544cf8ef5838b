#![allow(dead_code)]

use std::sync::Arc;

use cwapprox::simplicial::{boundary_simplex, standard_simplex};
use cwapprox::{GeneratorSubset, Simplex, SimplexRef, SimplicialMap, SimplicialSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

/// Seed for randomized tests; override with `CWAPPROX_TEST_SEED`.
pub fn seed() -> u64 {
    std::env::var("CWAPPROX_TEST_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

pub fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed())
}

pub fn arc(x: SimplicialSet) -> Arc<SimplicialSet> {
    Arc::new(x)
}

pub fn simplex(n: usize) -> Arc<SimplicialSet> {
    arc(standard_simplex(n))
}

pub fn sphere(n: usize) -> Arc<SimplicialSet> {
    arc(boundary_simplex(n).unwrap())
}

pub fn empty() -> Arc<SimplicialSet> {
    arc(SimplicialSet::empty())
}

pub fn r(dim: usize, index: usize) -> SimplexRef {
    SimplexRef::new(dim, index)
}

/// Inclusion of the face-closure of `members` into `x`.
pub fn sub_inclusion(x: &Arc<SimplicialSet>, members: &[SimplexRef]) -> SimplicialMap {
    let s = GeneratorSubset::new(members.iter().copied()).closure(x);
    s.to_simplicial_set(x).unwrap().1
}

/// Structure maps used across suites, all with small towers at cap 2.
pub fn corpus() -> Vec<(&'static str, SimplicialMap)> {
    let point = simplex(0);
    vec![
        ("point", SimplicialMap::from_empty(point.clone())),
        ("circle", SimplicialMap::from_empty(sphere(2))),
        ("edge", SimplicialMap::from_empty(simplex(1))),
        ("pointed-point", SimplicialMap::identity(point)),
        ("vertex-in-edge", sub_inclusion(&simplex(1), &[r(0, 0)])),
        ("two-points", SimplicialMap::from_empty(sphere(1))),
    ]
}

/// Random valid simplicial set with at most `max_gens` generators and
/// dimension at most 2.
pub fn random_set(rng: &mut impl Rng, max_gens: usize) -> SimplicialSet {
    let mut x = SimplicialSet::empty();
    let total = rng.random_range(1..=max_gens);
    let vertices = rng.random_range(1..=total);
    for v in 0..vertices {
        x.push_generator(0, format!("v{v}"), vec![]).unwrap();
    }
    let mut tries = 0;
    while x.total_generators() < total && tries < 50 {
        tries += 1;
        let dim = if x.count(1) > 0 && rng.random_bool(0.4) { 2 } else { 1 };
        let pool = x.simplices(dim - 1);
        let faces: Vec<Simplex> = (0..=dim)
            .map(|_| pool[rng.random_range(0..pool.len())].clone())
            .collect();
        let label = format!("g{}", x.total_generators());
        // invalid face tuples are rejected and rolled back
        let _ = x.push_generator(dim, label, faces);
    }
    x
}
