use std::fmt;
use std::sync::Arc;

use super::map::SimplicialMap;
use super::simplex::{coface, epi_mono, DegeneracyWord, Simplex, SimplexRef};
use crate::error::{Error, Result};

/// One nondegenerate generator: a label plus its face list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub label: String,
    /// `faces[i]` is `d_i` of this generator. Empty for vertices.
    pub faces: Vec<Simplex>,
}

/// A finite simplicial set presented by nondegenerate generators and their
/// face tables. Degenerate simplices are implicit, in normal form.
///
/// Equality is literal: generator counts, face tables and labels.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SimplicialSet {
    gens: Vec<Vec<Generator>>,
}

/// A single problem found by [`SimplicialSet::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    FaceCount {
        gen: SimplexRef,
        found: usize,
    },
    FaceDimension {
        gen: SimplexRef,
        face: usize,
        found: usize,
    },
    MalformedWord {
        gen: SimplexRef,
        face: usize,
    },
    Dangling {
        gen: SimplexRef,
        face: usize,
        target: SimplexRef,
    },
    /// `d_i d_j g != d_{j-1} d_i g` for `i < j`.
    Identity {
        gen: SimplexRef,
        i: usize,
        j: usize,
        lhs: Simplex,
        rhs: Simplex,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::FaceCount { gen, found } => {
                write!(f, "generator {gen} has {found} faces, expected {}", gen.dim + 1)
            }
            Violation::FaceDimension { gen, face, found } => write!(
                f,
                "generator {gen} face {face} has dimension {found}, expected {}",
                gen.dim.saturating_sub(1)
            ),
            Violation::MalformedWord { gen, face } => {
                write!(f, "generator {gen} face {face} has an out-of-range degeneracy index")
            }
            Violation::Dangling { gen, face, target } => {
                write!(f, "generator {gen} face {face} references missing generator {target}")
            }
            Violation::Identity { gen, i, j, lhs, rhs } => write!(
                f,
                "generator {gen} violates d_{i} d_{j} = d_{} d_{i}: {lhs} != {rhs}",
                j - 1
            ),
        }
    }
}

/// Output of [`SimplicialSet::validate`]; empty iff the set is well formed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<()> {
        if self.is_ok() {
            Ok(())
        } else {
            let msgs: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
            Err(Error::Invalid(msgs.join("; ")))
        }
    }
}

impl SimplicialSet {
    pub fn empty() -> Self {
        SimplicialSet { gens: Vec::new() }
    }

    /// Builds from raw generator tables and validates. Trailing empty
    /// dimensions are dropped.
    pub fn new(gens: Vec<Vec<Generator>>) -> Result<Self> {
        let set = Self::from_parts_unchecked(gens);
        set.validate().into_result()?;
        Ok(set)
    }

    /// Builds without validation. Use [`validate`](Self::validate) to
    /// inspect the result; other methods assume a well-formed set.
    pub fn from_parts_unchecked(mut gens: Vec<Vec<Generator>>) -> Self {
        while gens.last().is_some_and(|g| g.is_empty()) {
            gens.pop();
        }
        SimplicialSet { gens }
    }

    pub fn generators(&self) -> &[Vec<Generator>] {
        &self.gens
    }

    /// Top dimension carrying a generator, `None` for the empty set.
    pub fn dimension(&self) -> Option<usize> {
        self.gens.len().checked_sub(1)
    }

    pub fn count(&self, dim: usize) -> usize {
        self.gens.get(dim).map_or(0, Vec::len)
    }

    /// Generator counts per dimension, `0..=dimension()`.
    pub fn counts(&self) -> Vec<usize> {
        self.gens.iter().map(Vec::len).collect()
    }

    pub fn total_generators(&self) -> usize {
        self.gens.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn generator(&self, r: SimplexRef) -> &Generator {
        &self.gens[r.dim][r.index]
    }

    pub fn contains(&self, r: SimplexRef) -> bool {
        r.index < self.count(r.dim)
    }

    pub fn label(&self, r: SimplexRef) -> &str {
        &self.generator(r).label
    }

    pub fn refs(&self, dim: usize) -> impl Iterator<Item = SimplexRef> + '_ {
        (0..self.count(dim)).map(move |i| SimplexRef::new(dim, i))
    }

    /// All generators in canonical order: by dimension, then index.
    pub fn all_refs(&self) -> impl Iterator<Item = SimplexRef> + '_ {
        (0..self.gens.len()).flat_map(move |d| self.refs(d))
    }

    /// Appends a generator after validating its faces and the simplicial
    /// identities it participates in.
    pub fn push_generator(
        &mut self,
        dim: usize,
        label: impl Into<String>,
        faces: Vec<Simplex>,
    ) -> Result<SimplexRef> {
        let r = self.push_generator_unchecked(dim, label, faces);
        let mut report = ValidationReport::default();
        self.check_generator(r, &mut report);
        if !report.is_ok() {
            self.gens[dim].pop();
            self.trim_trailing();
            return report.into_result().map(|_| r);
        }
        Ok(r)
    }

    pub(crate) fn push_generator_unchecked(
        &mut self,
        dim: usize,
        label: impl Into<String>,
        faces: Vec<Simplex>,
    ) -> SimplexRef {
        if self.gens.len() <= dim {
            self.gens.resize_with(dim + 1, Vec::new);
        }
        self.gens[dim].push(Generator {
            label: label.into(),
            faces,
        });
        SimplexRef::new(dim, self.gens[dim].len() - 1)
    }

    fn trim_trailing(&mut self) {
        while self.gens.last().is_some_and(|g| g.is_empty()) {
            self.gens.pop();
        }
    }

    /// Every simplex of total dimension `dim`, degenerate ones included, in
    /// canonical order (word first, then generator).
    pub fn simplices(&self, dim: usize) -> Vec<Simplex> {
        let mut out = Vec::new();
        for base in 0..=dim.min(self.gens.len().saturating_sub(1)) {
            if self.count(base) == 0 {
                continue;
            }
            let k = dim - base;
            for word in decreasing_words(k, dim) {
                for r in self.refs(base) {
                    out.push(Simplex::new(word.clone(), r));
                }
            }
        }
        out.sort();
        out
    }

    /// Applies a monotone map `[k] -> [x.dim()]` to `x`, returning the
    /// result in normal form.
    pub fn apply(&self, x: &Simplex, op: &[usize]) -> Simplex {
        self.try_apply(x, op)
            .expect("operator applied inside a malformed simplicial set")
    }

    fn try_apply(&self, x: &Simplex, op: &[usize]) -> Option<Simplex> {
        let theta = x.word.surjection(x.gen.dim);
        let phi: Vec<usize> = op.iter().map(|&t| theta[t]).collect();
        let (eta, image) = epi_mono(&phi);
        let restricted = self.try_restrict(x.gen, &image)?;
        Some(restricted.degenerate_by(&eta))
    }

    /// The generator `g` precomposed with the injection whose image is
    /// `image`.
    fn try_restrict(&self, g: SimplexRef, image: &[usize]) -> Option<Simplex> {
        if image.len() == g.dim + 1 {
            return Some(Simplex::nondegenerate(g));
        }
        let missing = (0..=g.dim).rev().find(|t| image.binary_search(t).is_err())?;
        let face = self.gens.get(g.dim)?.get(g.index)?.faces.get(missing)?;
        if face.dim() + 1 != g.dim || !face.is_well_formed() || !self.contains(face.gen) {
            return None;
        }
        let shifted: Vec<usize> = image
            .iter()
            .map(|&v| if v > missing { v - 1 } else { v })
            .collect();
        self.try_apply(face, &shifted)
    }

    /// `d_i x`.
    pub fn face(&self, x: &Simplex, i: usize) -> Result<Simplex> {
        let m = x.dim();
        if m == 0 || i > m {
            return Err(Error::DimensionMismatch(format!(
                "d_{i} applied to a {m}-simplex"
            )));
        }
        Ok(self.apply(x, &coface(m, i)))
    }

    /// Normal form of `word(d_i(s))`, or `word(s)` when no face is given.
    pub fn normalize(
        &self,
        word: &DegeneracyWord,
        applied_face: Option<usize>,
        s: &Simplex,
    ) -> Result<Simplex> {
        if !self.contains(s.gen) || !s.is_well_formed() {
            return Err(Error::Invalid(format!("{s} is not a simplex of this set")));
        }
        let inner = match applied_face {
            Some(i) => self.face(s, i)?,
            None => s.clone(),
        };
        let m = inner.dim();
        if let Some(&top) = word.indices().first() {
            if top > m + word.len() - 1 {
                return Err(Error::DimensionMismatch(format!(
                    "degeneracy s_{top} does not apply to a {m}-simplex"
                )));
            }
        }
        let lifted = word.surjection(m);
        Ok(inner.degenerate_by(&lifted))
    }

    /// Reports every structural defect and violated simplicial identity.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        for r in self.all_refs() {
            self.check_generator(r, &mut report);
        }
        report
    }

    fn check_generator(&self, r: SimplexRef, report: &mut ValidationReport) {
        let g = self.generator(r);
        let expected = if r.dim == 0 { 0 } else { r.dim + 1 };
        if g.faces.len() != expected {
            report.violations.push(Violation::FaceCount {
                gen: r,
                found: g.faces.len(),
            });
            return;
        }
        let mut structural_ok = true;
        for (i, face) in g.faces.iter().enumerate() {
            if face.dim() + 1 != r.dim {
                report.violations.push(Violation::FaceDimension {
                    gen: r,
                    face: i,
                    found: face.dim(),
                });
                structural_ok = false;
            } else if !face.is_well_formed() {
                report
                    .violations
                    .push(Violation::MalformedWord { gen: r, face: i });
                structural_ok = false;
            } else if !self.contains(face.gen) {
                report.violations.push(Violation::Dangling {
                    gen: r,
                    face: i,
                    target: face.gen,
                });
                structural_ok = false;
            }
        }
        if !structural_ok || r.dim < 2 {
            return;
        }
        let n = r.dim;
        for j in 1..=n {
            for i in 0..j {
                let lhs = self.try_apply(&g.faces[j], &coface(n - 1, i));
                let rhs = self.try_apply(&g.faces[i], &coface(n - 1, j - 1));
                if let (Some(lhs), Some(rhs)) = (lhs, rhs) {
                    if lhs != rhs {
                        report.violations.push(Violation::Identity {
                            gen: r,
                            i,
                            j,
                            lhs,
                            rhs,
                        });
                    }
                }
            }
        }
    }

    /// Copy of this set with every face reference shifted by per-dimension
    /// offsets. Used for coproducts.
    fn shifted(&self, offsets: &[usize]) -> Vec<Vec<Generator>> {
        let off = |d: usize| offsets.get(d).copied().unwrap_or(0);
        self.gens
            .iter()
            .map(|gs| {
                gs.iter()
                    .map(|g| Generator {
                        label: g.label.clone(),
                        faces: g
                            .faces
                            .iter()
                            .map(|s| {
                                Simplex::new(
                                    s.word.clone(),
                                    SimplexRef::new(s.gen.dim, s.gen.index + off(s.gen.dim)),
                                )
                            })
                            .collect(),
                    })
                    .collect()
            })
            .collect()
    }
}

/// Coproduct `X ⊔ Y` with both inclusions. In each dimension the generators
/// of `X` come first, then those of `Y`.
pub fn disjoint_union(
    x: &Arc<SimplicialSet>,
    y: &Arc<SimplicialSet>,
) -> (Arc<SimplicialSet>, SimplicialMap, SimplicialMap) {
    let top = x.gens.len().max(y.gens.len());
    let offsets: Vec<usize> = (0..top).map(|d| x.count(d)).collect();
    let mut gens: Vec<Vec<Generator>> = x.gens.clone();
    gens.resize_with(top, Vec::new);
    for (d, gs) in y.shifted(&offsets).into_iter().enumerate() {
        gens[d].extend(gs);
    }
    let sum = Arc::new(SimplicialSet::from_parts_unchecked(gens));
    let left = SimplicialMap::from_parts_unchecked(
        x.clone(),
        sum.clone(),
        (0..x.gens.len())
            .map(|d| x.refs(d).map(Simplex::nondegenerate).collect())
            .collect(),
    );
    let right = SimplicialMap::from_parts_unchecked(
        y.clone(),
        sum.clone(),
        (0..y.gens.len())
            .map(|d| {
                y.refs(d)
                    .map(|r| Simplex::nondegenerate(SimplexRef::new(d, r.index + offsets[d])))
                    .collect()
            })
            .collect(),
    );
    (sum, left, right)
}

/// All strictly decreasing words of length `len` with entries `< total_dim`.
pub(crate) fn decreasing_words(len: usize, total_dim: usize) -> Vec<DegeneracyWord> {
    fn rec(len: usize, below: usize, acc: &mut Vec<usize>, out: &mut Vec<DegeneracyWord>) {
        if acc.len() == len {
            out.push(DegeneracyWord::new(acc.clone()).expect("decreasing by construction"));
            return;
        }
        for j in (0..below).rev() {
            acc.push(j);
            rec(len, j, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(len, total_dim, &mut Vec::new(), &mut out);
    out
}
