use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::matrix::IntMatrix;
use super::snf::smith_normal_form;
use crate::error::{Error, Result};
use crate::simplicial::{SimplicialMap, SimplicialSet};

/// Normalized chains: one basis element per nondegenerate generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    ranks: Vec<usize>,
    /// `boundaries[n - 1]` is `∂_n`, shaped `rank_{n-1} × rank_n`.
    boundaries: Vec<IntMatrix>,
}

impl ChainComplex {
    /// Checks shapes and `∂∂ = 0`.
    pub fn new(ranks: Vec<usize>, boundaries: Vec<IntMatrix>) -> Result<Self> {
        if boundaries.len() + 1 != ranks.len().max(1) {
            return Err(Error::DimensionMismatch(format!(
                "{} ranks but {} boundary matrices",
                ranks.len(),
                boundaries.len()
            )));
        }
        for (k, d) in boundaries.iter().enumerate() {
            let n = k + 1;
            if d.rows() != ranks[n - 1] || d.cols() != ranks[n] {
                return Err(Error::DimensionMismatch(format!(
                    "boundary {n} is {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    ranks[n - 1],
                    ranks[n]
                )));
            }
        }
        for (k, pair) in boundaries.windows(2).enumerate() {
            if !(&pair[0] * &pair[1]).is_zero() {
                return Err(Error::Invalid(format!(
                    "boundary {} composed with boundary {} is nonzero",
                    k + 1,
                    k + 2
                )));
            }
        }
        Ok(ChainComplex { ranks, boundaries })
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, n: usize) -> usize {
        self.ranks.get(n).copied().unwrap_or(0)
    }

    /// `∂_n` for any `n`; zero-shaped outside the stored range.
    pub fn boundary(&self, n: usize) -> IntMatrix {
        match n {
            0 => IntMatrix::zeros(0, self.rank(0)),
            _ => self
                .boundaries
                .get(n - 1)
                .cloned()
                .unwrap_or_else(|| IntMatrix::zeros(self.rank(n - 1), self.rank(n))),
        }
    }
}

pub fn chain_complex(x: &SimplicialSet) -> ChainComplex {
    let ranks = x.counts();
    let boundaries = (1..ranks.len())
        .map(|n| {
            let mut d = IntMatrix::zeros(ranks[n - 1], ranks[n]);
            for g in x.refs(n) {
                for (i, face) in x.generator(g).faces.iter().enumerate() {
                    if !face.is_degenerate() {
                        let sign = if i % 2 == 0 { 1 } else { -1 };
                        d[(face.gen.index, g.index)] += sign;
                    }
                }
            }
            d
        })
        .collect();
    // a valid set always satisfies ∂∂ = 0, so a failure here is a bug
    ChainComplex::new(ranks, boundaries).expect("normalized chains of a valid simplicial set")
}

/// `ℤ^betti ⊕ ⊕_k ℤ/torsion[k]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomologyGroup {
    pub dim: usize,
    pub betti: usize,
    /// Invariant factors greater than one, each dividing the next.
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn is_trivial(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }

    /// `degree,betti,torsion` with torsion factors joined by spaces.
    pub fn csv_row(&self) -> String {
        let t: Vec<String> = self.torsion.iter().map(ToString::to_string).collect();
        format!("{},{},{}", self.dim, self.betti, t.join(" "))
    }
}

pub const HOMOLOGY_CSV_HEADER: &str = "degree,betti,torsion";

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `H_i` together with explicit cycle representatives for its cyclic
/// summands and a way to read off the class of any cycle.
///
/// Summands are ordered torsion first (in divisibility order), then free.
#[derive(Clone, Debug)]
pub struct HomologyBasis {
    group: HomologyGroup,
    /// Order of each summand; zero for free summands.
    orders: Vec<BigInt>,
    /// Position of each summand in the adapted coordinates.
    slots: Vec<usize>,
    /// Cycle representatives, in chain coordinates.
    generators: Vec<Vec<BigInt>>,
    /// Rows of `V'⁻¹` that give kernel coordinates of a cycle.
    kernel_coords: IntMatrix,
    /// Change of basis on kernel coordinates.
    adapt: IntMatrix,
}

impl HomologyBasis {
    pub fn new(c: &ChainComplex, i: usize) -> Self {
        let m = c.rank(i);
        let di = smith_normal_form(&c.boundary(i));
        let r = di.rank;
        let z = m - r;
        let kernel_coords = di.v_inv.row_slice(r..m);
        let dnext = c.boundary(i + 1);
        let full = &di.v_inv * &dnext;
        debug_assert!(full.row_slice(0..r).is_zero(), "boundaries must be cycles");
        let y = full.row_slice(r..m);
        let sy = smith_normal_form(&y);
        let factors = sy.invariant_factors();

        let mut orders = Vec::new();
        let mut slots = Vec::new();
        for (k, e) in factors.iter().enumerate() {
            if !e.is_one() {
                orders.push(e.clone());
                slots.push(k);
            }
        }
        for k in sy.rank..z {
            orders.push(BigInt::zero());
            slots.push(k);
        }
        // kernel basis is columns r.. of V'
        let generators = slots
            .iter()
            .map(|&k| {
                let y_coords = sy.u_inv.column(k);
                (0..m)
                    .map(|row| (0..z).map(|t| &di.v[(row, r + t)] * &y_coords[t]).sum())
                    .collect()
            })
            .collect();
        let group = HomologyGroup {
            dim: i,
            betti: z - sy.rank,
            torsion: factors.into_iter().filter(|e| !e.is_one()).collect(),
        };
        HomologyBasis {
            group,
            orders,
            slots,
            generators,
            kernel_coords,
            adapt: sy.u,
        }
    }

    pub fn group(&self) -> &HomologyGroup {
        &self.group
    }

    /// Number of cyclic summands.
    pub fn len(&self) -> usize {
        self.orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orders.is_empty()
    }

    /// Summand orders, zero meaning free.
    pub fn orders(&self) -> &[BigInt] {
        &self.orders
    }

    pub fn generators(&self) -> &[Vec<BigInt>] {
        &self.generators
    }

    /// Class of a cycle in summand coordinates, torsion entries reduced.
    pub fn coordinates(&self, cycle: &[BigInt]) -> Vec<BigInt> {
        let h = self.adapt.mul_vec(&self.kernel_coords.mul_vec(cycle));
        self.slots
            .iter()
            .zip(&self.orders)
            .map(|(&k, d)| reduce(&h[k], d))
            .collect()
    }
}

fn reduce(x: &BigInt, order: &BigInt) -> BigInt {
    if order.is_zero() {
        x.clone()
    } else {
        x.mod_floor(order)
    }
}

pub fn homology(x: &SimplicialSet, i: usize) -> HomologyGroup {
    HomologyBasis::new(&chain_complex(x), i).group
}

/// All nonzero-rank degrees, from 0 through the dimension of `x`.
pub fn homology_all(x: &SimplicialSet) -> Vec<HomologyGroup> {
    let c = chain_complex(x);
    (0..c.ranks().len())
        .map(|i| HomologyBasis::new(&c, i).group)
        .collect()
}

/// `f_*: H_i(dom) → H_i(cod)` as a matrix in summand coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyMap {
    pub degree: usize,
    pub source: HomologyGroup,
    pub target: HomologyGroup,
    /// Columns are images of source summands; torsion rows reduced.
    pub matrix: IntMatrix,
    pub is_epi: bool,
    pub is_iso: bool,
}

/// Degree-`i` chain map of `f`, shaped `rank_i(cod) × rank_i(dom)`.
pub fn chain_map(f: &SimplicialMap, i: usize) -> IntMatrix {
    let mut m = IntMatrix::zeros(f.cod().count(i), f.dom().count(i));
    for g in f.dom().refs(i) {
        let s = f.image_of(g);
        if !s.is_degenerate() {
            m[(s.gen.index, g.index)] += 1;
        }
    }
    m
}

pub fn induced_homology_map(f: &SimplicialMap, i: usize) -> HomologyMap {
    let src = HomologyBasis::new(&chain_complex(f.dom()), i);
    let dst = HomologyBasis::new(&chain_complex(f.cod()), i);
    let fi = chain_map(f, i);
    let mut matrix = IntMatrix::zeros(dst.len(), src.len());
    for (col, g) in src.generators().iter().enumerate() {
        for (row, v) in dst.coordinates(&fi.mul_vec(g)).into_iter().enumerate() {
            matrix[(row, col)] = v;
        }
    }
    let is_epi = is_epimorphism(&matrix, dst.orders());
    let is_iso = is_epi && is_monomorphism(&matrix, src.orders(), dst.orders());
    HomologyMap {
        degree: i,
        source: src.group.clone(),
        target: dst.group.clone(),
        matrix,
        is_epi,
        is_iso,
    }
}

fn relations(orders: &[BigInt]) -> IntMatrix {
    let mut r = IntMatrix::zeros(orders.len(), orders.len());
    for (k, d) in orders.iter().enumerate() {
        r[(k, k)] = d.clone();
    }
    r
}

/// `Φ: ℤ^s → ℤ^t / R` is onto iff `[Φ | R]` has `t` unit invariant factors.
fn is_epimorphism(phi: &IntMatrix, target_orders: &[BigInt]) -> bool {
    let s = smith_normal_form(&phi.hstack(&relations(target_orders)));
    s.rank == target_orders.len() && s.invariant_factors().iter().all(One::is_one)
}

/// Kernel of `ℤ^s / R_s → ℤ^t / R_t` is trivial iff every `x` with
/// `Φx ∈ im R_t` already lies in `im R_s`.
fn is_monomorphism(phi: &IntMatrix, source_orders: &[BigInt], target_orders: &[BigInt]) -> bool {
    let m = phi.hstack(&relations(target_orders));
    let s = smith_normal_form(&m);
    (s.rank..m.cols()).all(|k| {
        source_orders
            .iter()
            .enumerate()
            .all(|(j, d)| reduce(&s.v[(j, k)], d).is_zero())
    })
}
