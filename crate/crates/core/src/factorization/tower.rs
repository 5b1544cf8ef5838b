use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::colimits::{attach_cells, new_generators, stage_zero, union_through};
use crate::error::{Error, Result};
use crate::hom_search::{enumerate_squares, AttachmentSquare, Budget};
use crate::simplicial::{SimplicialMap, SimplicialSet};

/// Which squares index the cells attached at each stage.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Every commutative square.
    AllMaps,
    /// Only squares whose attaching map is cellular.
    Cellular,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::AllMaps => "all",
            Variant::Cellular => "cellular",
        })
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Variant::AllMaps),
            "cellular" => Ok(Variant::Cellular),
            other => Err(Error::Invalid(format!("unknown variant '{other}'"))),
        }
    }
}

/// True iff `f` carries the `k`-skeleton into the `k`-skeleton for every
/// `k`. Every simplicial map does, but the check is real.
pub fn is_cellular(f: &SimplicialMap) -> bool {
    f.dom().all_refs().all(|r| f.image_of(r).gen.dim <= r.dim)
}

/// Keeps the squares whose attaching map is cellular.
pub fn cellular_variant_filter(squares: Vec<AttachmentSquare>, n: usize) -> Vec<AttachmentSquare> {
    squares
        .into_iter()
        .filter(|s| s.n == n && is_cellular(&s.attach))
        .collect()
}

/// The staged factorization `A = A₋₁ ⊆ A₀ ⊆ … ⊆ A_N → B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tower {
    structure_map: SimplicialMap,
    cap: usize,
    variant: Variant,
    stages: Vec<Arc<SimplicialSet>>,
    /// `inclusions[n]: A_{n-1} → A_n`
    inclusions: Vec<SimplicialMap>,
    /// `projections[n]: A_n → B`
    projections: Vec<SimplicialMap>,
    /// `squares[n]` for `n >= 1`; `squares[0]` is empty.
    squares: Vec<Vec<AttachmentSquare>>,
}

/// One row of the stage-growth table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GrowthRow {
    pub stage: usize,
    pub dimension: usize,
    pub new_cells: usize,
    pub cumulative: usize,
}

/// Factors `f: A → B` through cell attachment up to stage `cap`.
pub fn build_tower(
    f: &SimplicialMap,
    cap: usize,
    variant: Variant,
    budget: &mut Budget,
) -> Result<Tower> {
    f.validate()?;
    let a = f.dom().clone();
    let (a0, i0, p0) = stage_zero(&a, f)?;
    let mut tower = Tower {
        structure_map: f.clone(),
        cap,
        variant,
        stages: vec![a0],
        inclusions: vec![i0],
        projections: vec![p0],
        squares: vec![Vec::new()],
    };
    for n in 1..=cap {
        let prev = tower.stages[n - 1].clone();
        let p_prev = tower.projections[n - 1].clone();
        let squares = enumerate_squares(n, &p_prev, budget).map_err(|e| match e {
            Error::BudgetExceeded { budget, context } => Error::BudgetExceeded {
                budget,
                context: format!(
                    "building stage {n} (previous stage counts {:?}; {context})",
                    prev.counts()
                ),
            },
            other => other,
        })?;
        let squares = match variant {
            Variant::AllMaps => squares,
            Variant::Cellular => cellular_variant_filter(squares, n),
        };
        let (next, incl, p_next) = attach_cells(&prev, &squares, &p_prev)?;
        tower.stages.push(next);
        tower.inclusions.push(incl);
        tower.projections.push(p_next);
        tower.squares.push(squares);
    }
    Ok(tower)
}

impl Tower {
    /// Assembles a tower from parts and checks every invariant.
    pub fn from_parts(
        structure_map: SimplicialMap,
        cap: usize,
        variant: Variant,
        stages: Vec<Arc<SimplicialSet>>,
        inclusions: Vec<SimplicialMap>,
        projections: Vec<SimplicialMap>,
        squares: Vec<Vec<AttachmentSquare>>,
    ) -> Result<Tower> {
        let t = Tower {
            structure_map,
            cap,
            variant,
            stages,
            inclusions,
            projections,
            squares,
        };
        t.check_invariants()?;
        Ok(t)
    }

    pub fn source(&self) -> &Arc<SimplicialSet> {
        self.structure_map.dom()
    }

    pub fn target(&self) -> &Arc<SimplicialSet> {
        self.structure_map.cod()
    }

    pub fn structure_map(&self) -> &SimplicialMap {
        &self.structure_map
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn stages(&self) -> &[Arc<SimplicialSet>] {
        &self.stages
    }

    pub fn stage(&self, n: usize) -> &Arc<SimplicialSet> {
        &self.stages[n]
    }

    pub fn inclusion(&self, n: usize) -> &SimplicialMap {
        &self.inclusions[n]
    }

    pub fn projection(&self, n: usize) -> &SimplicialMap {
        &self.projections[n]
    }

    pub fn squares(&self, n: usize) -> &[AttachmentSquare] {
        &self.squares[n]
    }

    /// The truncated approximation `A_N`.
    pub fn approximation(&self) -> &Arc<SimplicialSet> {
        self.stages.last().expect("stage zero always exists")
    }

    /// `A_k` for `-1 <= k <= cap`.
    pub fn union_through(&self, k: isize) -> Result<Arc<SimplicialSet>> {
        let mut chain = Vec::with_capacity(self.stages.len() + 1);
        chain.push(self.source().clone());
        chain.extend(self.stages.iter().cloned());
        union_through(&chain, k)
    }

    pub fn growth(&self) -> Vec<GrowthRow> {
        (0..=self.cap)
            .map(|n| {
                let prev = if n == 0 { self.source() } else { &self.stages[n - 1] };
                GrowthRow {
                    stage: n,
                    dimension: n,
                    new_cells: self.stages[n].count(n) - prev.count(n),
                    cumulative: self.stages[n].total_generators(),
                }
            })
            .collect()
    }

    /// Checks the structural invariants of the tower.
    pub fn check_invariants(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Invalid(msg));
        self.structure_map.validate()?;
        let len = self.cap + 1;
        if self.stages.len() != len
            || self.inclusions.len() != len
            || self.projections.len() != len
            || self.squares.len() != len
        {
            return fail("tower component lengths disagree with its cap".into());
        }
        if !self.squares[0].is_empty() {
            return fail("stage 0 carries attachment squares".into());
        }
        for n in 0..len {
            let prev = if n == 0 { self.source() } else { &self.stages[n - 1] };
            let prev_p = if n == 0 { &self.structure_map } else { &self.projections[n - 1] };
            let stage = &self.stages[n];
            stage.validate().into_result()?;
            let incl = &self.inclusions[n];
            let p = &self.projections[n];
            incl.validate()?;
            p.validate()?;
            if incl.dom() != prev || incl.cod() != stage || p.dom() != stage || p.cod() != self.target() {
                return fail(format!("stage {n}: maps have the wrong endpoints"));
            }
            if !incl.is_simplicial_subset() {
                return fail(format!("stage {n}: inclusion is not a subset inclusion"));
            }
            if incl.then(p)? != *prev_p {
                return fail(format!("stage {n}: projection does not restrict along the inclusion"));
            }
            for d in 0..=stage.dimension().unwrap_or(0).max(prev.dimension().unwrap_or(0)) {
                let added = stage.count(d) as isize - prev.count(d) as isize;
                let expected = if d != n {
                    0
                } else if n == 0 {
                    self.target().count(0) as isize
                } else {
                    self.squares[n].len() as isize
                };
                if added != expected {
                    return fail(format!(
                        "stage {n} adds {added} generators in dimension {d}, expected {expected}"
                    ));
                }
            }
            if n >= 1 {
                for (sq, r) in self.squares[n].iter().zip(new_generators(prev, stage, n)) {
                    if sq.n != n || sq.attach.cod() != prev || sq.disk.cod() != self.target() {
                        return fail(format!("stage {n}: square with wrong corners"));
                    }
                    sq.check_commutes(prev_p)?;
                    if stage.generator(r).faces != sq.cell_faces() || p.image_of(r) != sq.top_image() {
                        return fail(format!("stage {n}: cell {r} does not match its square"));
                    }
                }
            }
        }
        Ok(())
    }
}
