//! Executable forms of the subcomplex, intersection and variant statements.

use std::sync::Arc;

use super::io::tower_content_files;
use super::tower::{build_tower, Tower, Variant};
use super::tower_map::{induced_tower_map, TowerMap};
use crate::error::{Error, Result};
use crate::hom_search::Budget;
use crate::simplicial::{intersect_subsets, GeneratorSubset, SimplexRef, SimplicialMap, SimplicialSet};

/// Outcome of [`check_subcomplex`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubcomplexReport {
    /// One entry per stage map.
    pub stages: Vec<bool>,
    /// First offending stage and generator, if any.
    pub witness: Option<(usize, SimplexRef)>,
}

impl SubcomplexReport {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

/// Whether every stage map of `tm` is an inclusion of a simplicial subset.
pub fn check_subcomplex(tm: &TowerMap) -> SubcomplexReport {
    let mut witness = None;
    let stages = tm
        .stage_maps()
        .iter()
        .enumerate()
        .map(|(n, f)| match f.first_non_inclusion() {
            Some(r) => {
                witness.get_or_insert((n, r));
                false
            }
            None => true,
        })
        .collect();
    SubcomplexReport { stages, witness }
}

/// Per-stage outcome of [`check_intersection`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionStage {
    pub stage: usize,
    pub holds: bool,
    /// Size of the intersection of the member images in `CW(X)`'s stage.
    pub meet_size: usize,
    /// Size of the image of `CW(∩ X_s)`'s stage.
    pub image_size: usize,
    /// Whether every member's stage map was a subset inclusion.
    pub members_are_subcomplexes: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionReport {
    pub stages: Vec<IntersectionStage>,
}

impl IntersectionReport {
    pub fn holds(&self) -> bool {
        self.stages.iter().all(|s| s.holds)
    }
}

/// `CW(Y)` for `Y ⊆ X`, with the tower map into `CW(X)`.
fn tower_of_subset(
    inclusion: &SimplicialMap,
    ambient: &Arc<Tower>,
    cap: usize,
    variant: Variant,
    budget: &mut Budget,
) -> Result<TowerMap> {
    let from_empty = SimplicialMap::from_empty(inclusion.dom().clone());
    let tower = Arc::new(build_tower(&from_empty, cap, variant, budget)?);
    let empty_id = SimplicialMap::identity(Arc::new(SimplicialSet::empty()));
    induced_tower_map(&empty_id, inclusion, &tower, ambient)
}

/// Compares `∩_s CW(X_s)` with `CW(∩_s X_s)` inside `CW(X)`, stage by
/// stage through `cap`.
pub fn check_intersection(
    x: &Arc<SimplicialSet>,
    subspaces: &[GeneratorSubset],
    cap: usize,
    variant: Variant,
    budget: &mut Budget,
) -> Result<IntersectionReport> {
    for (k, s) in subspaces.iter().enumerate() {
        if let Some(r) = s.face_closure_defect(x) {
            return Err(Error::NotFaceClosed(format!("member {k}, generator {r}")));
        }
    }
    let ambient = Arc::new(build_tower(
        &SimplicialMap::from_empty(x.clone()),
        cap,
        variant,
        budget,
    )?);
    let mut member_maps = Vec::with_capacity(subspaces.len());
    for s in subspaces {
        let (_, inc) = s.to_simplicial_set(x)?;
        member_maps.push(tower_of_subset(&inc, &ambient, cap, variant, budget)?);
    }
    let (_, _, meet_inc) = intersect_subsets(x, subspaces)?;
    let meet_map = tower_of_subset(&meet_inc, &ambient, cap, variant, budget)?;

    let mut stages = Vec::with_capacity(cap + 1);
    for n in 0..=cap {
        let mut members_ok = true;
        let mut meet = GeneratorSubset::all(ambient.stage(n));
        for tm in &member_maps {
            match GeneratorSubset::image_of(&tm.stage_maps()[n]) {
                Ok(img) => meet = meet.intersection(&img),
                Err(_) => members_ok = false,
            }
        }
        let image = GeneratorSubset::image_of(&meet_map.stage_maps()[n]);
        let (holds, image_size) = match &image {
            Ok(img) => (members_ok && *img == meet, img.len()),
            Err(_) => (false, 0),
        };
        stages.push(IntersectionStage {
            stage: n,
            holds,
            meet_size: meet.len(),
            image_size,
            members_are_subcomplexes: members_ok,
        });
    }
    Ok(IntersectionReport { stages })
}

/// Builds `f` with both variants and compares the serialized contents.
pub fn check_variant_coincidence(
    f: &SimplicialMap,
    cap: usize,
    budget: &mut Budget,
) -> Result<bool> {
    let all = build_tower(f, cap, Variant::AllMaps, budget)?;
    let cellular = build_tower(f, cap, Variant::Cellular, budget)?;
    Ok(tower_content_files(&all) == tower_content_files(&cellular))
}
