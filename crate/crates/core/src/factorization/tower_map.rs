use std::collections::HashMap;
use std::sync::Arc;

use super::tower::Tower;
use crate::error::{Error, Result};
use crate::hom_search::SquareKey;
use crate::simplicial::standard::subset_inclusion;
use crate::simplicial::{Simplex, SimplexRef, SimplicialMap};

/// The map of towers induced by a commutative square
/// `(f: A → A', g: B → B')`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerMap {
    source: Arc<Tower>,
    target: Arc<Tower>,
    top: SimplicialMap,
    bottom: SimplicialMap,
    /// `stage_maps[n]: A_n → A'_n` for `n = 0..=min(caps)`.
    stage_maps: Vec<SimplicialMap>,
}

/// Builds `f_n: A_n → A'_n` stage by stage: the point over `b` goes to the
/// point over `g(b)`, and the cell of square `(α, β)` goes to the cell of
/// `(f_{n-1} ∘ α, g ∘ β)`.
pub fn induced_tower_map(
    f: &SimplicialMap,
    g: &SimplicialMap,
    source: &Arc<Tower>,
    target: &Arc<Tower>,
) -> Result<TowerMap> {
    if source.variant() != target.variant() {
        return Err(Error::Precondition("towers were built with different variants".into()));
    }
    if f.dom() != source.source()
        || f.cod() != target.source()
        || g.dom() != source.target()
        || g.cod() != target.target()
    {
        return Err(Error::Precondition("square corners do not match the towers".into()));
    }
    if source.structure_map().then(g)? != f.then(target.structure_map())? {
        return Err(Error::Commutativity("g ∘ f_T != f_T' ∘ f".into()));
    }

    let top = source.cap().min(target.cap());
    let mut stage_maps: Vec<SimplicialMap> = Vec::with_capacity(top + 1);

    // stage 0
    let a0 = source.stage(0);
    let b0 = target.stage(0);
    let mut assign = f.assignments().to_vec();
    if assign.is_empty() {
        assign.push(Vec::new());
    }
    let offset = target.source().count(0);
    for r in source.target().refs(0) {
        let img = g.image_of(r);
        assign[0].push(Simplex::nondegenerate(SimplexRef::new(0, offset + img.gen.index)));
    }
    stage_maps.push(SimplicialMap::from_parts_unchecked(a0.clone(), b0.clone(), assign));

    for n in 1..=top {
        let prev = &stage_maps[n - 1];
        let index: HashMap<SquareKey, usize> = target
            .squares(n)
            .iter()
            .enumerate()
            .map(|(i, s)| (s.key(), i))
            .collect();
        let offset = target.stage(n - 1).count(n);
        let mut assign = prev.assignments().to_vec();
        if assign.len() <= n {
            assign.resize_with(n + 1, Vec::new);
        }
        for (q, sq) in source.squares(n).iter().enumerate() {
            let key = SquareKey {
                attach: sq.attach.then(prev)?.assignments().to_vec(),
                disk: sq.disk.then(g)?.assignments().to_vec(),
            };
            let Some(&i) = index.get(&key) else {
                return Err(Error::Invalid(format!(
                    "stage {n}: image of square {q} is not a square of the target tower"
                )));
            };
            assign[n].push(Simplex::nondegenerate(SimplexRef::new(n, offset + i)));
        }
        stage_maps.push(SimplicialMap::from_parts_unchecked(
            source.stage(n).clone(),
            target.stage(n).clone(),
            assign,
        ));
    }
    Ok(TowerMap {
        source: source.clone(),
        target: target.clone(),
        top: f.clone(),
        bottom: g.clone(),
        stage_maps,
    })
}

impl TowerMap {
    pub fn source(&self) -> &Arc<Tower> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Tower> {
        &self.target
    }

    /// `f: A → A'`
    pub fn top(&self) -> &SimplicialMap {
        &self.top
    }

    /// `g: B → B'`
    pub fn bottom(&self) -> &SimplicialMap {
        &self.bottom
    }

    pub fn stage_maps(&self) -> &[SimplicialMap] {
        &self.stage_maps
    }

    /// Stagewise composite `other ∘ self`.
    pub fn then(&self, other: &TowerMap) -> Result<TowerMap> {
        if *self.target != *other.source {
            return Err(Error::Precondition("tower maps are not composable".into()));
        }
        let stage_maps = self
            .stage_maps
            .iter()
            .zip(&other.stage_maps)
            .map(|(a, b)| a.then(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(TowerMap {
            source: self.source.clone(),
            target: other.target.clone(),
            top: self.top.then(&other.top)?,
            bottom: self.bottom.then(&other.bottom)?,
            stage_maps,
        })
    }

    pub fn is_identity(&self) -> bool {
        self.stage_maps.iter().all(SimplicialMap::is_identity)
    }

    /// Checks every commuting square of the induced diagram:
    /// `f_n ∘ ι_n = ι'_n ∘ f_{n-1}`, `p'_n ∘ f_n = g ∘ p_n`, and
    /// `A → A_n → A'_n = A → A' → A'_n`.
    pub fn check_invariants(&self) -> Result<()> {
        let (s, t) = (&self.source, &self.target);
        for (n, fnm) in self.stage_maps.iter().enumerate() {
            fnm.validate()?;
            let prev = if n == 0 { &self.top } else { &self.stage_maps[n - 1] };
            if s.inclusion(n).then(fnm)? != prev.then(t.inclusion(n))? {
                return Err(Error::Commutativity(format!("inclusion square at stage {n}")));
            }
            if fnm.then(t.projection(n))? != s.projection(n).then(&self.bottom)? {
                return Err(Error::Commutativity(format!("projection square at stage {n}")));
            }
            let from_a = subset_inclusion(s.source().clone(), s.stage(n).clone());
            let from_a_prime = subset_inclusion(t.source().clone(), t.stage(n).clone());
            if from_a.then(fnm)? != self.top.then(&from_a_prime)? {
                return Err(Error::Commutativity(format!("A → A'_n square at stage {n}")));
            }
        }
        Ok(())
    }
}
