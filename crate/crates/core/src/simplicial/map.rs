use std::collections::HashSet;
use std::sync::Arc;

use super::set::SimplicialSet;
use super::simplex::{Simplex, SimplexRef};
use crate::error::{Error, Result};

/// A morphism of simplicial sets, given by the image of each generator of
/// the domain. Images of degenerate simplices follow from the normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimplicialMap {
    dom: Arc<SimplicialSet>,
    cod: Arc<SimplicialSet>,
    assign: Vec<Vec<Simplex>>,
}

impl SimplicialMap {
    /// Builds and checks face compatibility.
    pub fn new(
        dom: Arc<SimplicialSet>,
        cod: Arc<SimplicialSet>,
        assign: Vec<Vec<Simplex>>,
    ) -> Result<Self> {
        let map = Self::from_parts_unchecked(dom, cod, assign);
        map.validate()?;
        Ok(map)
    }

    pub fn from_parts_unchecked(
        dom: Arc<SimplicialSet>,
        cod: Arc<SimplicialSet>,
        mut assign: Vec<Vec<Simplex>>,
    ) -> Self {
        while assign.last().is_some_and(|a| a.is_empty()) {
            assign.pop();
        }
        SimplicialMap { dom, cod, assign }
    }

    pub fn identity(x: Arc<SimplicialSet>) -> Self {
        let assign = (0..x.generators().len())
            .map(|d| x.refs(d).map(Simplex::nondegenerate).collect())
            .collect();
        SimplicialMap {
            dom: x.clone(),
            cod: x,
            assign,
        }
    }

    /// The unique map out of the empty simplicial set.
    pub fn from_empty(cod: Arc<SimplicialSet>) -> Self {
        SimplicialMap {
            dom: Arc::new(SimplicialSet::empty()),
            cod,
            assign: Vec::new(),
        }
    }

    pub fn dom(&self) -> &Arc<SimplicialSet> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<SimplicialSet> {
        &self.cod
    }

    pub fn assignments(&self) -> &[Vec<Simplex>] {
        &self.assign
    }

    pub fn image_of(&self, r: SimplexRef) -> &Simplex {
        &self.assign[r.dim][r.index]
    }

    /// Image of an arbitrary simplex of the domain.
    pub fn apply(&self, x: &Simplex) -> Simplex {
        let img = self.image_of(x.gen);
        img.degenerate_by(&x.word.surjection(x.gen.dim))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SimplicialMap) -> Result<SimplicialMap> {
        if *self.cod != *other.dom {
            return Err(Error::DimensionMismatch(
                "composite of maps whose codomain and domain differ".into(),
            ));
        }
        let assign = self
            .assign
            .iter()
            .map(|row| row.iter().map(|s| other.apply(s)).collect())
            .collect();
        Ok(SimplicialMap {
            dom: self.dom.clone(),
            cod: other.cod.clone(),
            assign,
        })
    }

    /// Same assignments, viewed with a new codomain that contains the old
    /// one as an initial segment of generators in every dimension.
    pub fn widen_codomain(&self, cod: Arc<SimplicialSet>) -> SimplicialMap {
        SimplicialMap {
            dom: self.dom.clone(),
            cod,
            assign: self.assign.clone(),
        }
    }

    /// Checks shape, references and `f(d_i g) = d_i f(g)` at every generator.
    pub fn validate(&self) -> Result<()> {
        if self.assign.len() > self.dom.generators().len() {
            return Err(Error::Invalid("assignment has too many dimensions".into()));
        }
        for d in 0..self.dom.generators().len() {
            let row = self.assign.get(d).map_or(0, Vec::len);
            if row != self.dom.count(d) {
                return Err(Error::Invalid(format!(
                    "dimension {d}: {row} assignments for {} generators",
                    self.dom.count(d)
                )));
            }
        }
        for r in self.dom.all_refs() {
            let img = self.image_of(r);
            if img.dim() != r.dim || !img.is_well_formed() || !self.cod.contains(img.gen) {
                return Err(Error::Invalid(format!(
                    "generator {r} is sent to {img}, which is not a {}-simplex of the codomain",
                    r.dim
                )));
            }
        }
        for r in self.dom.all_refs() {
            if r.dim == 0 {
                continue;
            }
            let img = self.image_of(r);
            for (i, face) in self.dom.generator(r).faces.iter().enumerate() {
                let lhs = self.apply(face);
                let rhs = self.cod.face(img, i)?;
                if lhs != rhs {
                    return Err(Error::Invalid(format!(
                        "map is not face compatible at {r}, face {i}: {lhs} != {rhs}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn is_identity(&self) -> bool {
        *self.dom == *self.cod
            && self.dom.all_refs().all(|r| {
                let img = self.image_of(r);
                !img.is_degenerate() && img.gen == r
            })
    }

    /// True iff every generator goes to a distinct nondegenerate generator.
    /// Together with face compatibility this makes the map an inclusion of a
    /// simplicial subset.
    pub fn is_simplicial_subset(&self) -> bool {
        self.first_non_inclusion().is_none()
    }

    /// The first generator breaking [`is_simplicial_subset`](Self::is_simplicial_subset).
    pub fn first_non_inclusion(&self) -> Option<SimplexRef> {
        let mut seen = HashSet::new();
        self.dom.all_refs().find(|&r| {
            let img = self.image_of(r);
            img.is_degenerate() || !seen.insert(img.gen)
        })
    }
}
