//! Standard simplices, their boundaries and horns, and a few canonical maps.

use std::collections::HashMap;
use std::sync::Arc;

use super::map::SimplicialMap;
use super::set::{Generator, SimplicialSet};
use super::simplex::{DegeneracyWord, Simplex, SimplexRef};
use crate::error::{Error, Result};

/// Generators of `Δⁿ` in dimension `k`: the `(k+1)`-subsets of `0..=n` in
/// lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if acc.len() == k + 1 {
            out.push(acc.clone());
            return;
        }
        for v in start..=n {
            acc.push(v);
            rec(v + 1, n, k, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Builds the face-closed family of vertex subsets of `0..=n` accepted by
/// `keep`, in lexicographic order per dimension.
fn simplex_family(n: usize, keep: impl Fn(&[usize]) -> bool) -> SimplicialSet {
    let mut gens: Vec<Vec<Generator>> = Vec::new();
    let mut index: Vec<HashMap<Vec<usize>, usize>> = Vec::new();
    for k in 0..=n {
        let mut layer = Vec::new();
        let mut idx = HashMap::new();
        for s in subsets(n, k).into_iter().filter(|s| keep(s)) {
            let faces = if k == 0 {
                Vec::new()
            } else {
                (0..=k)
                    .map(|i| {
                        let mut f = s.clone();
                        f.remove(i);
                        Simplex::nondegenerate(SimplexRef::new(k - 1, index[k - 1][&f]))
                    })
                    .collect()
            };
            let label = s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
            idx.insert(s, layer.len());
            layer.push(Generator { label, faces });
        }
        gens.push(layer);
        index.push(idx);
    }
    SimplicialSet::from_parts_unchecked(gens)
}

/// `Δⁿ`.
pub fn standard_simplex(n: usize) -> SimplicialSet {
    simplex_family(n, |_| true)
}

/// `∂Δⁿ`, i.e. `Δⁿ` without its top generator. Generator indices agree
/// with those of `Δⁿ`.
pub fn boundary_simplex(n: usize) -> Result<SimplicialSet> {
    if n == 0 {
        return Err(Error::Precondition(
            "the boundary of the 0-simplex is empty; use SimplicialSet::empty".into(),
        ));
    }
    Ok(simplex_family(n, |s| s.len() <= n))
}

/// The horn `Λⁿ_k`: `∂Δⁿ` without the face opposite vertex `k`.
pub fn horn(n: usize, k: usize) -> Result<SimplicialSet> {
    if n == 0 || k > n {
        return Err(Error::Precondition(format!("no horn Λ^{n}_{k}")));
    }
    Ok(simplex_family(n, |s| s.len() < n || (s.len() == n && s.contains(&k))))
}

/// Index of the top generator's `i`-th face among the `(n-1)`-generators of
/// `Δⁿ` (and of `∂Δⁿ`).
pub fn facet_index(n: usize, i: usize) -> usize {
    n - i
}

/// The canonical inclusion `∂Δⁿ → Δⁿ`.
pub fn boundary_inclusion(n: usize) -> Result<SimplicialMap> {
    let b = Arc::new(boundary_simplex(n)?);
    let d = Arc::new(standard_simplex(n));
    Ok(subset_inclusion(b, d))
}

/// Inclusion of a set whose generators are, dimension by dimension, an
/// initial segment of those of `cod`.
pub(crate) fn subset_inclusion(dom: Arc<SimplicialSet>, cod: Arc<SimplicialSet>) -> SimplicialMap {
    let assign = (0..dom.generators().len())
        .map(|d| dom.refs(d).map(Simplex::nondegenerate).collect())
        .collect();
    SimplicialMap::from_parts_unchecked(dom, cod, assign)
}

/// The unique map `X → Δ⁰`.
pub fn terminal_map(x: Arc<SimplicialSet>) -> SimplicialMap {
    let point = Arc::new(standard_simplex(0));
    let assign = (0..x.generators().len())
        .map(|d| {
            let word = DegeneracyWord::new((0..d).rev().collect()).expect("decreasing");
            vec![Simplex::new(word, SimplexRef::new(0, 0)); x.count(d)]
        })
        .collect();
    SimplicialMap::from_parts_unchecked(x, point, assign)
}

/// The map `Δᵐ → Δⁿ` induced by a monotone map `[m] → [n]`.
pub fn standard_map(m: usize, n: usize, values: &[usize]) -> Result<SimplicialMap> {
    if values.len() != m + 1 || values.windows(2).any(|w| w[0] > w[1]) || values.iter().any(|&v| v > n)
    {
        return Err(Error::Invalid(format!(
            "{values:?} is not a monotone map [{m}] -> [{n}]"
        )));
    }
    let dom = Arc::new(standard_simplex(m));
    let cod = Arc::new(standard_simplex(n));
    let top = Simplex::nondegenerate(SimplexRef::new(n, 0));
    let assign = (0..=m)
        .map(|k| {
            subsets(m, k)
                .iter()
                .map(|s| {
                    let op: Vec<usize> = s.iter().map(|&t| values[t]).collect();
                    cod.apply(&top, &op)
                })
                .collect()
        })
        .collect();
    SimplicialMap::new(dom, cod, assign)
}
