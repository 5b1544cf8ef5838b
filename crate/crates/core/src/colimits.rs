//! Cell attachment along `∂Δⁿ ⊆ Δⁿ` and the stage-zero coproduct.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hom_search::AttachmentSquare;
use crate::simplicial::standard::subset_inclusion;
use crate::simplicial::{disjoint_union, Simplex, SimplexRef, SimplicialMap, SimplicialSet};

/// Label given to a cell attached along `square`.
pub fn cell_label(square: &AttachmentSquare) -> String {
    format!("cell {}", square.serialize())
}

/// Pushout of `X ← ⊔ ∂Δⁿ → ⊔ Δⁿ`, one cell per square in list order.
///
/// Returns `X'`, the inclusion `X → X'` and the extended projection
/// `p': X' → B`, which sends the cell of a square to the disk image of the
/// top simplex.
pub fn attach_cells(
    x: &Arc<SimplicialSet>,
    squares: &[AttachmentSquare],
    p: &SimplicialMap,
) -> Result<(Arc<SimplicialSet>, SimplicialMap, SimplicialMap)> {
    if p.dom() != x {
        return Err(Error::Precondition(
            "projection does not start at the complex being extended".into(),
        ));
    }
    let Some(n) = squares.first().map(|s| s.n) else {
        return Ok((x.clone(), SimplicialMap::identity(x.clone()), p.clone()));
    };
    for (k, sq) in squares.iter().enumerate() {
        if sq.n != n {
            return Err(Error::DimensionMismatch(format!(
                "square {k} has dimension {}, expected {n}",
                sq.n
            )));
        }
        if sq.attach.cod() != x {
            return Err(Error::Precondition(format!(
                "square {k} is not attached to this complex"
            )));
        }
        sq.check_commutes(p)?;
    }
    let mut grown = (**x).clone();
    let mut cell_images = Vec::with_capacity(squares.len());
    for sq in squares {
        grown.push_generator_unchecked(n, cell_label(sq), sq.cell_faces());
        cell_images.push(sq.top_image().clone());
    }
    let grown = Arc::new(grown);
    let incl = subset_inclusion(x.clone(), grown.clone());
    let mut assign = p.assignments().to_vec();
    if assign.len() <= n {
        assign.resize_with(n + 1, Vec::new);
    }
    assign[n].extend(cell_images);
    let p_next = SimplicialMap::from_parts_unchecked(grown.clone(), p.cod().clone(), assign);
    Ok((grown, incl, p_next))
}

/// Discrete simplicial set with one vertex per vertex of `b`.
fn vertices_of(b: &SimplicialSet) -> SimplicialSet {
    let mut v = SimplicialSet::empty();
    for r in b.refs(0) {
        v.push_generator_unchecked(0, format!("pt {r}"), Vec::new());
    }
    v
}

/// `A₀ = A ⊔ (one point per vertex of B)`, with inclusion and projection.
pub fn stage_zero(
    a: &Arc<SimplicialSet>,
    f: &SimplicialMap,
) -> Result<(Arc<SimplicialSet>, SimplicialMap, SimplicialMap)> {
    if f.dom() != a {
        return Err(Error::Precondition("map does not start at A".into()));
    }
    let b = f.cod();
    let points = Arc::new(vertices_of(b));
    let (a0, incl, _) = disjoint_union(a, &points);
    let mut assign = f.assignments().to_vec();
    if assign.is_empty() {
        assign.push(Vec::new());
    }
    assign[0].extend(b.refs(0).map(Simplex::nondegenerate));
    let p0 = SimplicialMap::from_parts_unchecked(a0.clone(), b.clone(), assign);
    Ok((a0, incl, p0))
}

/// The colimit of `A = A₋₁ ⊆ A₀ ⊆ … ⊆ A_k`. `chain[0]` is `A₋₁`. Since the
/// chain is increasing the colimit is its last member.
pub fn union_through(chain: &[Arc<SimplicialSet>], k: isize) -> Result<Arc<SimplicialSet>> {
    usize::try_from(k + 1)
        .ok()
        .and_then(|i| chain.get(i))
        .cloned()
        .ok_or_else(|| {
            Error::OutOfRange(format!(
                "stage {k} is outside -1..={}",
                chain.len() as isize - 2
            ))
        })
}

/// Generators of `A_n` in dimension `dim` that were attached at stage `n`,
/// given the previous stage.
pub fn new_generators(
    prev: &SimplicialSet,
    next: &SimplicialSet,
    dim: usize,
) -> impl Iterator<Item = SimplexRef> {
    (prev.count(dim)..next.count(dim)).map(move |i| SimplexRef::new(dim, i))
}
