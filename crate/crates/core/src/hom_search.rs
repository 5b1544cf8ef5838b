//! Exhaustive enumeration of simplicial maps out of small domains, and of
//! the commutative squares that index attached cells.
//!
//! Generators of the domain are assigned in canonical order (dimension,
//! then index). When a generator of dimension `k >= 1` is reached all of its
//! faces are already assigned, so its admissible images are exactly the
//! `k`-simplices of the target with that face tuple; these are looked up in
//! a precomputed index instead of being filtered one by one.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::simplicial::{boundary_simplex, standard_simplex, Simplex, SimplicialMap, SimplicialSet};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Caps the number of partial assignments visited. Exceeding it is an
/// error, never a silent truncation.
#[derive(Clone, Debug)]
pub struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    fn tick(&mut self, context: &dyn Fn() -> String) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            return Err(Error::BudgetExceeded {
                budget: self.limit,
                context: context(),
            });
        }
        Ok(())
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_BUDGET)
    }
}

/// Simplices of a target set up to some dimension, keyed by face tuple.
struct FaceIndex {
    vertices: Vec<Simplex>,
    by_faces: Vec<HashMap<Vec<Simplex>, Vec<Simplex>>>,
}

impl FaceIndex {
    fn build(x: &SimplicialSet, max_dim: usize) -> Self {
        let vertices = x.simplices(0);
        let mut by_faces = vec![HashMap::new()];
        for k in 1..=max_dim {
            let mut table: HashMap<Vec<Simplex>, Vec<Simplex>> = HashMap::new();
            for s in x.simplices(k) {
                let faces = (0..=k)
                    .map(|i| x.face(&s, i).expect("dimension checked"))
                    .collect();
                table.entry(faces).or_default().push(s);
            }
            by_faces.push(table);
        }
        FaceIndex { vertices, by_faces }
    }

    fn candidates(&self, dim: usize, faces: &[Simplex]) -> &[Simplex] {
        if dim == 0 {
            &self.vertices
        } else {
            self.by_faces[dim].get(faces).map_or(&[], Vec::as_slice)
        }
    }
}

/// All maps `k → x` in canonical order.
pub fn enumerate_maps(
    k: &Arc<SimplicialSet>,
    x: &Arc<SimplicialSet>,
    budget: &mut Budget,
) -> Result<Vec<SimplicialMap>> {
    let order: Vec<_> = k.all_refs().collect();
    let max_dim = k.dimension().unwrap_or(0);
    let index = FaceIndex::build(x, max_dim);
    let mut assign: Vec<Vec<Simplex>> = k.counts().iter().map(|&c| Vec::with_capacity(c)).collect();
    let mut out = Vec::new();
    let context = || {
        format!(
            "enumerating maps from a complex with counts {:?} into one with counts {:?}",
            k.counts(),
            x.counts()
        )
    };

    #[allow(clippy::too_many_arguments)]
    fn rec(
        pos: usize,
        order: &[crate::simplicial::SimplexRef],
        k: &Arc<SimplicialSet>,
        x: &Arc<SimplicialSet>,
        index: &FaceIndex,
        assign: &mut Vec<Vec<Simplex>>,
        out: &mut Vec<SimplicialMap>,
        budget: &mut Budget,
        context: &dyn Fn() -> String,
    ) -> Result<()> {
        let Some(&r) = order.get(pos) else {
            out.push(SimplicialMap::from_parts_unchecked(
                k.clone(),
                x.clone(),
                assign.clone(),
            ));
            return Ok(());
        };
        let faces: Vec<Simplex> = k
            .generator(r)
            .faces
            .iter()
            .map(|f| assign[f.gen.dim][f.gen.index].degenerate_by(&f.word.surjection(f.gen.dim)))
            .collect();
        for cand in index.candidates(r.dim, &faces) {
            budget.tick(context)?;
            assign[r.dim].push(cand.clone());
            rec(pos + 1, order, k, x, index, assign, out, budget, context)?;
            assign[r.dim].pop();
        }
        Ok(())
    }

    rec(0, &order, k, x, &index, &mut assign, &mut out, budget, &context)?;
    Ok(out)
}

/// One commutative square `p ∘ attach = disk ∘ (∂Δⁿ ⊆ Δⁿ)`: the index of
/// one attached `n`-cell.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AttachmentSquare {
    pub n: usize,
    /// `∂Δⁿ → A_{n-1}`
    pub attach: SimplicialMap,
    /// `Δⁿ → B`
    pub disk: SimplicialMap,
}

/// Hashable identity of a square: the two assignment tables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquareKey {
    pub attach: Vec<Vec<Simplex>>,
    pub disk: Vec<Vec<Simplex>>,
}

impl AttachmentSquare {
    pub fn key(&self) -> SquareKey {
        SquareKey {
            attach: self.attach.assignments().to_vec(),
            disk: self.disk.assignments().to_vec(),
        }
    }

    /// Image of the top simplex of `Δⁿ` under the disk map.
    pub fn top_image(&self) -> &Simplex {
        let top = self.disk.dom().refs(self.n).next().expect("Δⁿ has a top generator");
        self.disk.image_of(top)
    }

    /// Faces of the attached cell: the attach-images of the facets of `Δⁿ`.
    pub fn cell_faces(&self) -> Vec<Simplex> {
        let top = self.disk.dom().refs(self.n).next().expect("Δⁿ has a top generator");
        self.disk
            .dom()
            .generator(top)
            .faces
            .iter()
            .map(|f| self.attach.apply(f))
            .collect()
    }

    /// Verifies the square commutes exactly against `p: A_{n-1} → B`.
    pub fn check_commutes(&self, p: &SimplicialMap) -> Result<()> {
        if self.attach.cod() != p.dom() || self.disk.cod() != p.cod() {
            return Err(Error::Commutativity(
                "square corners do not match the projection".into(),
            ));
        }
        let down = self.attach.then(p)?;
        let n = self.n;
        for r in self.attach.dom().all_refs() {
            // ∂Δⁿ and Δⁿ share generator indices below the top.
            if down.image_of(r) != self.disk.image_of(r) {
                return Err(Error::Commutativity(format!(
                    "{}-square disagrees at boundary generator {r}: {} vs {}",
                    n,
                    down.image_of(r),
                    self.disk.image_of(r)
                )));
            }
        }
        Ok(())
    }

    /// Canonical one-line serialization: `n=<n> attach <simplices> disk <simplices>`,
    /// simplices listed in generator order of `∂Δⁿ` and `Δⁿ`.
    pub fn serialize(&self) -> String {
        let mut out = format!("n={} attach", self.n);
        for row in self.attach.assignments() {
            for s in row {
                let _ = write!(out, " {s}");
            }
        }
        out.push_str(" disk");
        for row in self.disk.assignments() {
            for s in row {
                let _ = write!(out, " {s}");
            }
        }
        out
    }

    /// Inverse of [`serialize`](Self::serialize) given the corners.
    pub fn parse(
        line_no: usize,
        line: &str,
        stage: &Arc<SimplicialSet>,
        target: &Arc<SimplicialSet>,
    ) -> Result<AttachmentSquare> {
        use crate::simplicial::text::Cursor;
        let mut c = Cursor::new(line_no, line);
        let head = c.word().unwrap_or_default();
        let n: usize = head
            .strip_prefix("n=")
            .and_then(|v| v.parse().ok())
            .filter(|&n| n >= 1)
            .ok_or_else(|| c.error("expected 'n=<dimension>'"))?;
        c.keyword("attach")?;
        let sphere = Arc::new(boundary_simplex(n)?);
        let disk_dom = Arc::new(standard_simplex(n));
        let read = |dom: &Arc<SimplicialSet>, c: &mut Cursor<'_>| -> Result<Vec<Vec<Simplex>>> {
            let mut rows = Vec::new();
            for count in dom.counts() {
                let mut row = Vec::with_capacity(count);
                for _ in 0..count {
                    row.push(c.simplex()?);
                }
                rows.push(row);
            }
            Ok(rows)
        };
        let attach = read(&sphere, &mut c)?;
        c.keyword("disk")?;
        let disk = read(&disk_dom, &mut c)?;
        c.expect_end()?;
        Ok(AttachmentSquare {
            n,
            attach: SimplicialMap::new(sphere, stage.clone(), attach)?,
            disk: SimplicialMap::new(disk_dom, target.clone(), disk)?,
        })
    }
}

/// All commutative squares with top map `∂Δⁿ → A_{n-1}` and bottom map
/// `Δⁿ → B` over `p: A_{n-1} → B`, ordered by attach map, then disk map.
pub fn enumerate_squares(
    n: usize,
    p: &SimplicialMap,
    budget: &mut Budget,
) -> Result<Vec<AttachmentSquare>> {
    if n == 0 {
        return Err(Error::Precondition("squares are indexed by n >= 1".into()));
    }
    let sphere = Arc::new(boundary_simplex(n)?);
    let disk_dom = Arc::new(standard_simplex(n));
    let disks = enumerate_maps(&disk_dom, p.cod(), budget)?;
    let mut by_boundary: HashMap<&[Vec<Simplex>], Vec<&SimplicialMap>> = HashMap::new();
    for d in &disks {
        by_boundary
            .entry(&d.assignments()[..n])
            .or_default()
            .push(d);
    }
    let attaches = enumerate_maps(&sphere, p.dom(), budget)?;
    let mut out = Vec::new();
    for a in attaches {
        let down = a.then(p)?;
        if let Some(ds) = by_boundary.get(down.assignments()) {
            for d in ds {
                out.push(AttachmentSquare {
                    n,
                    attach: a.clone(),
                    disk: (*d).clone(),
                });
            }
        }
    }
    Ok(out)
}
