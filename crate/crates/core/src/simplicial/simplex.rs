//! Simplices in Eilenberg–Zilber normal form and the monotone-map
//! arithmetic behind face and degeneracy operators.
//!
//! A simplex of total dimension `m` is a nondegenerate generator `g` of
//! dimension `n` together with a surjection `[m] -> [n]`. The surjection is
//! stored as a [`DegeneracyWord`]: the set of positions `t` where it repeats
//! a value, listed in strictly decreasing order, which is exactly the word
//! `s_{j1} s_{j2} ... s_{jk}` with `j1 > j2 > ... > jk`.

use std::fmt;

use crate::error::{Error, Result};

/// Reference to a nondegenerate generator: its dimension and its position
/// among the generators of that dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplexRef {
    pub dim: usize,
    pub index: usize,
}

impl SimplexRef {
    pub const fn new(dim: usize, index: usize) -> Self {
        SimplexRef { dim, index }
    }
}

impl fmt::Display for SimplexRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.dim, self.index)
    }
}

/// A strictly decreasing sequence of degeneracy indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegeneracyWord(Vec<usize>);

impl DegeneracyWord {
    pub fn empty() -> Self {
        DegeneracyWord(Vec::new())
    }

    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::Invalid(format!(
                "degeneracy word {indices:?} is not strictly decreasing"
            )));
        }
        Ok(DegeneracyWord(indices))
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The surjection `[base_dim + len] -> [base_dim]` this word denotes,
    /// as its table of values.
    pub fn surjection(&self, base_dim: usize) -> Vec<usize> {
        let total = base_dim + self.0.len();
        (0..=total)
            .map(|t| t - self.0.iter().filter(|&&j| j < t).count())
            .collect()
    }

    /// Normal form of a monotone surjection given by its value table.
    pub fn from_surjection(values: &[usize]) -> Self {
        let mut idx: Vec<usize> = values
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] == w[1])
            .map(|(t, _)| t)
            .collect();
        idx.reverse();
        DegeneracyWord(idx)
    }
}

/// A simplex `word(gen)`. The derived order compares the word first, then
/// the generator, which is the canonical order used by map enumeration.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex {
    pub word: DegeneracyWord,
    pub gen: SimplexRef,
}

impl Simplex {
    pub fn nondegenerate(gen: SimplexRef) -> Self {
        Simplex {
            word: DegeneracyWord::empty(),
            gen,
        }
    }

    pub fn new(word: DegeneracyWord, gen: SimplexRef) -> Self {
        Simplex { word, gen }
    }

    pub fn dim(&self) -> usize {
        self.gen.dim + self.word.len()
    }

    pub fn is_degenerate(&self) -> bool {
        !self.word.is_empty()
    }

    /// Checks that every word index is at most `dim - 1`.
    pub fn is_well_formed(&self) -> bool {
        match self.word.indices().first() {
            Some(&j) => j < self.dim(),
            None => true,
        }
    }

    /// Precomposes with a monotone surjection `[k] -> [self.dim()]`. No face
    /// table is needed since the generator is untouched.
    pub fn degenerate_by(&self, surjection: &[usize]) -> Simplex {
        let theta = self.word.surjection(self.gen.dim);
        let composite: Vec<usize> = surjection.iter().map(|&t| theta[t]).collect();
        Simplex {
            word: DegeneracyWord::from_surjection(&composite),
            gen: self.gen,
        }
    }

    /// `s_j` applied to this simplex.
    pub fn degeneracy(&self, j: usize) -> Result<Simplex> {
        let m = self.dim();
        if j > m {
            return Err(Error::DimensionMismatch(format!(
                "s_{j} applied to a {m}-simplex"
            )));
        }
        Ok(self.degenerate_by(&codegeneracy(m, j)))
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for j in self.word.indices() {
            write!(f, "s{j} ")?;
        }
        write!(f, "|{})", self.gen)
    }
}

/// The coface map `[m-1] -> [m]` skipping `i`.
pub fn coface(m: usize, i: usize) -> Vec<usize> {
    (0..m).map(|t| if t < i { t } else { t + 1 }).collect()
}

/// The codegeneracy map `[m+1] -> [m]` hitting `j` twice.
pub fn codegeneracy(m: usize, j: usize) -> Vec<usize> {
    (0..=m + 1).map(|t| if t <= j { t } else { t - 1 }).collect()
}

/// Splits a monotone map into a surjection followed by an injection.
/// Returns the surjection's value table and the sorted image.
pub fn epi_mono(values: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut image: Vec<usize> = values.to_vec();
    image.dedup();
    let mut pos = 0;
    let surj = values
        .iter()
        .map(|v| {
            while image[pos] != *v {
                pos += 1;
            }
            pos
        })
        .collect();
    (surj, image)
}
