use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use super::map::SimplicialMap;
use super::set::{Generator, SimplicialSet};
use super::simplex::{Simplex, SimplexRef};
use crate::error::{Error, Result};

/// A set of generators of some ambient simplicial set.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GeneratorSubset {
    members: BTreeSet<SimplexRef>,
}

impl GeneratorSubset {
    pub fn new(members: impl IntoIterator<Item = SimplexRef>) -> Self {
        GeneratorSubset {
            members: members.into_iter().collect(),
        }
    }

    pub fn all(x: &SimplicialSet) -> Self {
        Self::new(x.all_refs())
    }

    /// The image of an inclusion of a simplicial subset.
    pub fn image_of(f: &SimplicialMap) -> Result<Self> {
        if let Some(r) = f.first_non_inclusion() {
            return Err(Error::Precondition(format!(
                "map is not a subset inclusion at generator {r}"
            )));
        }
        Ok(Self::new(f.dom().all_refs().map(|r| f.image_of(r).gen)))
    }

    pub fn contains(&self, r: SimplexRef) -> bool {
        self.members.contains(&r)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = SimplexRef> + '_ {
        self.members.iter().copied()
    }

    pub fn intersection(&self, other: &GeneratorSubset) -> GeneratorSubset {
        GeneratorSubset {
            members: self.members.intersection(&other.members).copied().collect(),
        }
    }

    /// Closes the subset under faces in `x`.
    pub fn closure(&self, x: &SimplicialSet) -> GeneratorSubset {
        let mut members = self.members.clone();
        let mut stack: Vec<SimplexRef> = members.iter().copied().collect();
        while let Some(r) = stack.pop() {
            for f in &x.generator(r).faces {
                if members.insert(f.gen) {
                    stack.push(f.gen);
                }
            }
        }
        GeneratorSubset { members }
    }

    /// The first member (if any) that is missing from `x` or has a face
    /// whose generator is outside the subset.
    pub fn face_closure_defect(&self, x: &SimplicialSet) -> Option<SimplexRef> {
        self.members.iter().copied().find(|&r| {
            !x.contains(r) || x.generator(r).faces.iter().any(|f| !self.contains(f.gen))
        })
    }

    pub fn is_face_closed(&self, x: &SimplicialSet) -> bool {
        self.face_closure_defect(x).is_none()
    }

    /// The subset as a simplicial set in its own right (generators reindexed
    /// densely in ambient order, labels kept) with its inclusion into `x`.
    pub fn to_simplicial_set(
        &self,
        x: &Arc<SimplicialSet>,
    ) -> Result<(Arc<SimplicialSet>, SimplicialMap)> {
        if let Some(r) = self.face_closure_defect(x) {
            return Err(Error::NotFaceClosed(format!("generator {r}")));
        }
        let mut reindex: HashMap<SimplexRef, SimplexRef> = HashMap::new();
        let mut gens: Vec<Vec<Generator>> = Vec::new();
        let mut assign: Vec<Vec<Simplex>> = Vec::new();
        for r in self.iter() {
            if gens.len() <= r.dim {
                gens.resize_with(r.dim + 1, Vec::new);
                assign.resize_with(r.dim + 1, Vec::new);
            }
            let g = x.generator(r);
            let faces = g
                .faces
                .iter()
                .map(|f| Simplex::new(f.word.clone(), reindex[&f.gen]))
                .collect();
            reindex.insert(r, SimplexRef::new(r.dim, gens[r.dim].len()));
            gens[r.dim].push(Generator {
                label: g.label.clone(),
                faces,
            });
            assign[r.dim].push(Simplex::nondegenerate(r));
        }
        let sub = Arc::new(SimplicialSet::from_parts_unchecked(gens));
        let inc = SimplicialMap::from_parts_unchecked(sub.clone(), x.clone(), assign);
        Ok((sub, inc))
    }
}

/// Intersection of a family of face-closed generator subsets of `x`, as a
/// simplicial set with its inclusion into `x`.
pub fn intersect_subsets(
    x: &Arc<SimplicialSet>,
    subs: &[GeneratorSubset],
) -> Result<(GeneratorSubset, Arc<SimplicialSet>, SimplicialMap)> {
    for (k, s) in subs.iter().enumerate() {
        if let Some(r) = s.face_closure_defect(x) {
            return Err(Error::NotFaceClosed(format!("member {k}, generator {r}")));
        }
    }
    let meet = match subs.split_first() {
        Some((first, rest)) => rest.iter().fold(first.clone(), |acc, s| acc.intersection(s)),
        None => GeneratorSubset::all(x),
    };
    let (set, inc) = meet.to_simplicial_set(x)?;
    Ok((meet, set, inc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::standard::boundary_simplex;

    fn r(d: usize, i: usize) -> SimplexRef {
        SimplexRef::new(d, i)
    }

    fn triangle() -> Arc<SimplicialSet> {
        Arc::new(boundary_simplex(2).unwrap())
    }

    #[test]
    fn adjacent_edges_meet_in_vertex() {
        let x = triangle();
        // edges {0,1} = 1:0 and {0,2} = 1:1 share vertex 0
        let a = GeneratorSubset::new([r(1, 0)]).closure(&x);
        let b = GeneratorSubset::new([r(1, 1)]).closure(&x);
        let (meet, set, inc) = intersect_subsets(&x, &[a, b]).unwrap();
        assert_eq!(meet, GeneratorSubset::new([r(0, 0)]));
        assert_eq!(set.counts(), vec![1]);
        assert!(inc.validate().is_ok() && inc.is_simplicial_subset());
    }

    #[test]
    fn singleton_family() {
        let x = triangle();
        let a = GeneratorSubset::new([r(1, 2)]).closure(&x);
        let (meet, _, _) = intersect_subsets(&x, std::slice::from_ref(&a)).unwrap();
        assert_eq!(meet, a);
    }

    #[test]
    fn disjoint_vertices_meet_empty() {
        let x = triangle();
        let (meet, set, _) = intersect_subsets(
            &x,
            &[GeneratorSubset::new([r(0, 0)]), GeneratorSubset::new([r(0, 2)])],
        )
        .unwrap();
        assert!(meet.is_empty());
        assert!(set.is_empty());
    }

    #[test]
    fn rejects_open_subset() {
        let x = triangle();
        let err = intersect_subsets(&x, &[GeneratorSubset::new([r(1, 0)])]).unwrap_err();
        assert!(matches!(err, Error::NotFaceClosed(_)));
    }

    #[test]
    fn image_round_trip() {
        let x = triangle();
        let a = GeneratorSubset::new([r(1, 0), r(1, 2)]).closure(&x);
        let (_, inc) = a.to_simplicial_set(&x).unwrap();
        assert_eq!(GeneratorSubset::image_of(&inc).unwrap(), a);
    }
}
