//! Smith normal form over ℤ with tracked unimodular transforms.
//!
//! Pivots are chosen as the smallest nonzero absolute value in the active
//! row and column, which keeps entry growth down.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

/// `d = u · m · v`, with `u_inv`, `v_inv` the inverses of `u`, `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    pub rank: usize,
}

impl SmithForm {
    /// Nonzero diagonal entries; each divides the next.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d[(i, i)].clone()).collect()
    }
}

struct Work {
    m: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Work {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.m.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.m.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    /// `row[dst] += c * row[src]`
    fn add_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.m.add_row(dst, src, c);
        self.u.add_row(dst, src, c);
        self.u_inv.add_col(src, dst, &-c);
    }

    /// `col[dst] += c * col[src]`
    fn add_col(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.m.add_col(dst, src, c);
        self.v.add_col(dst, src, c);
        self.v_inv.add_row(src, dst, &-c);
    }

    fn negate_row(&mut self, i: usize) {
        self.m.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work {
        m: m.clone(),
        u: IntMatrix::identity(rows),
        u_inv: IntMatrix::identity(rows),
        v: IntMatrix::identity(cols),
        v_inv: IntMatrix::identity(cols),
    };
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = smallest_nonzero(&w.m, (t..rows).flat_map(|i| (t..cols).map(move |j| (i, j))))
        else {
            break;
        };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            for i in t + 1..rows {
                if !w.m[(i, t)].is_zero() {
                    let q = w.m[(i, t)].div_floor(&w.m[(t, t)]);
                    w.add_row(i, t, &-q);
                }
            }
            for j in t + 1..cols {
                if !w.m[(t, j)].is_zero() {
                    let q = w.m[(t, j)].div_floor(&w.m[(t, t)]);
                    w.add_col(j, t, &-q);
                }
            }
            let cross = (t + 1..rows)
                .map(|i| (i, t))
                .chain((t + 1..cols).map(|j| (t, j)));
            if let Some((i, j)) = smallest_nonzero(&w.m, cross) {
                // a remainder survived and is smaller than the pivot
                if j == t {
                    w.swap_rows(t, i);
                } else {
                    w.swap_cols(t, j);
                }
                continue;
            }
            let p = w.m[(t, t)].clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !w.m[(i, j)].is_multiple_of(&p)));
            match bad {
                Some(i) => w.add_row(t, i, &BigInt::from(1)),
                None => break,
            }
        }
        if w.m[(t, t)].is_negative() {
            w.negate_row(t);
        }
        t += 1;
    }
    SmithForm {
        u: w.u,
        u_inv: w.u_inv,
        d: w.m,
        v: w.v,
        v_inv: w.v_inv,
        rank: t,
    }
}

fn smallest_nonzero(
    m: &IntMatrix,
    cells: impl Iterator<Item = (usize, usize)>,
) -> Option<(usize, usize)> {
    cells
        .filter(|&c| !m[c].is_zero())
        .min_by(|&a, &b| m[a].abs().cmp(&m[b].abs()))
}
