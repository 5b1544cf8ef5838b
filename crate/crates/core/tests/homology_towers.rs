mod common;

use common::*;
use cwapprox::homology::{
    chain_complex, connectivity_report, homology, induced_homology_map, HomologyGroup,
};
use cwapprox::simplicial::standard_simplex;
use cwapprox::{build_tower, Budget, Error, SimplicialMap, Tower, Variant};
use num_bigint::BigInt;

fn tower(f: &SimplicialMap, cap: usize) -> Tower {
    build_tower(f, cap, Variant::AllMaps, &mut Budget::default()).unwrap()
}

fn point_tower() -> Tower {
    tower(&SimplicialMap::from_empty(simplex(0)), 2)
}

fn circle_tower() -> Tower {
    tower(&SimplicialMap::from_empty(sphere(2)), 2)
}

fn free(dim: usize, betti: usize) -> HomologyGroup {
    HomologyGroup { dim, betti, torsion: vec![] }
}

#[test]
fn point_tower_second_boundary_matches_hand_evaluation() {
    let t = point_tower();
    let d2 = chain_complex(t.stage(2)).boundary(2);
    assert_eq!((d2.rows(), d2.cols()), (1, 8));

    // Oracle: attach maps assign each edge of ∂Δ² (in order 01, 02, 12) to
    // the loop e or to s0 v, the loop sorting first. Facet i of Δ² is the
    // edge opposite vertex i, so (a2, a1, a0) is the enumeration order.
    let mut oracle = Vec::new();
    for a2 in [1, 0] {
        for a1 in [1, 0] {
            for a0 in [1, 0] {
                oracle.push(BigInt::from(a0 - a1 + a2));
            }
        }
    }
    assert_eq!(d2.row(0), oracle.as_slice());

    // same multiset as a plain sum over {0,1}³
    let mut got: Vec<i64> = d2.row(0).iter().map(|v| i64::try_from(v).unwrap()).collect();
    got.sort();
    assert_eq!(got, vec![-1, 0, 0, 0, 1, 1, 1, 2]);
}

#[test]
fn point_tower_homology() {
    let t = point_tower();
    assert_eq!(homology(t.stage(1), 1), free(1, 1));
    assert_eq!(homology(t.stage(2), 1), free(1, 0));
    assert_eq!(homology(t.stage(2), 2), free(2, 7));
    assert!(induced_homology_map(t.projection(2), 1).is_iso);
}

#[test]
fn circle_tower_homology() {
    let t = circle_tower();
    assert_eq!(homology(t.stage(1), 1), free(1, 4));
    let h = induced_homology_map(t.projection(1), 1);
    assert!(h.is_epi && !h.is_iso);
    assert_eq!(h.target, free(1, 1));
    let h2 = induced_homology_map(t.projection(2), 1);
    assert!(h2.is_iso, "{h2:?}");
}

#[test]
fn point_tower_connectivity() {
    let t = point_tower();
    let r1 = connectivity_report(&t, 1, false).unwrap();
    assert_eq!(r1.pi0_bijective, Some(true));
    assert_eq!(r1.h1_epi, Some(true));
    for n in 0..=2 {
        let r = connectivity_report(&t, n, true).unwrap();
        assert!(r.all_true(), "stage {n}: {r:?}");
    }
    let r2 = connectivity_report(&t, 2, true).unwrap();
    assert_eq!(r2.h_iso_below, vec![(0, true), (1, true)]);
    assert_eq!(r2.h_epi_at, Some((2, true)));
    assert!(matches!(connectivity_report(&t, 3, true), Err(Error::OutOfRange(_))));
}

#[test]
fn circle_refuses_simply_connected_flag() {
    let t = circle_tower();
    assert!(matches!(connectivity_report(&t, 2, true), Err(Error::Precondition(_))));
    let r = connectivity_report(&t, 1, false).unwrap();
    assert_eq!((r.pi0_bijective, r.h1_epi), (Some(true), Some(true)));
    assert!(r.h_iso_below.is_empty() && r.h_epi_at.is_none());
}

#[test]
fn proxy_suite_holds_on_corpus() {
    for (name, f) in corpus() {
        let t = tower(&f, 2);
        let flag = homology(t.target(), 1).is_trivial();
        for n in 0..=2 {
            let r = connectivity_report(&t, n, flag).unwrap();
            assert!(r.all_true(), "{name} stage {n}: {:?}", r.lines());
        }
    }
}

#[test]
fn induced_maps_are_functorial() {
    for (name, f) in corpus() {
        let t = tower(&f, 2);
        // A_1 → A_2 → B against the composite A_1 → B
        let first = t.inclusion(2);
        let second = t.projection(2);
        let composite = first.then(second).unwrap();
        for i in 0..=2 {
            let a = induced_homology_map(first, i);
            let b = induced_homology_map(second, i);
            let c = induced_homology_map(&composite, i);
            assert_eq!(&b.matrix * &a.matrix, c.matrix, "{name} degree {i}");
        }
    }
}

#[test]
fn degeneracy_map_kills_top_class() {
    // Δ² → Δ¹ squashing the last edge; both contractible
    let g = cwapprox::simplicial::standard_map(2, 1, &[0, 0, 1]).unwrap();
    for i in 0..=2 {
        assert!(induced_homology_map(&g, i).is_iso);
    }
    assert_eq!(homology(&standard_simplex(2), 0), free(0, 1));
}
