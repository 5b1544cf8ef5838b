//! Computable facets of "the stage projection `A_n → B` is `n`-connected".
//!
//! π₀ is checked exactly. Higher homotopy groups are not computed; integral
//! homology stands in for them and every report says so in its caveats.

use std::collections::BTreeSet;

use super::chain::{homology, induced_homology_map};
use crate::error::{Error, Result};
use crate::factorization::Tower;
use crate::simplicial::{SimplexRef, SimplicialMap, SimplicialSet};

pub const CAVEAT_HOMOTOPY: &str =
    "pi_i for i >= 1 is not computed; integral homology is used as a proxy";
pub const CAVEAT_H1: &str =
    "h1_epi checks only the abelianization of the fundamental-group epimorphism";
pub const CAVEAT_SIMPLY_CONNECTED: &str =
    "h_iso_below and h_epi_at assume the stage is simply connected (pi_1 onto the trivial group); this is not verified";
pub const CAVEAT_FLAG_UNUSED: &str = "simply-connected flag has no effect below stage 2";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectivityReport {
    pub stage: usize,
    pub pi0_surjective: bool,
    /// Checked from stage 1 on.
    pub pi0_bijective: Option<bool>,
    /// Checked from stage 1 on.
    pub h1_epi: Option<bool>,
    /// `(i, H_i iso)` for `i < n`; only with the simply-connected flag and `n >= 2`.
    pub h_iso_below: Vec<(usize, bool)>,
    /// `(n, H_n epi)`; same condition as `h_iso_below`.
    pub h_epi_at: Option<(usize, bool)>,
    pub caveats: Vec<String>,
}

impl ConnectivityReport {
    /// Whether every check that ran came out true.
    pub fn all_true(&self) -> bool {
        self.pi0_surjective
            && self.pi0_bijective != Some(false)
            && self.h1_epi != Some(false)
            && self.h_iso_below.iter().all(|&(_, ok)| ok)
            && self.h_epi_at.is_none_or(|(_, ok)| ok)
    }

    /// One `name value` line per populated check, then one line per caveat.
    pub fn lines(&self) -> Vec<String> {
        let mut out = vec![
            format!("stage {}", self.stage),
            format!("pi0_surjective {}", self.pi0_surjective),
        ];
        if let Some(b) = self.pi0_bijective {
            out.push(format!("pi0_bijective {b}"));
        }
        if let Some(b) = self.h1_epi {
            out.push(format!("h1_epi {b}"));
        }
        for (i, b) in &self.h_iso_below {
            out.push(format!("h{i}_iso {b}"));
        }
        if let Some((i, b)) = self.h_epi_at {
            out.push(format!("h{i}_epi {b}"));
        }
        out.extend(self.caveats.iter().map(|c| format!("caveat {c}")));
        out
    }
}

/// Path components: a representative vertex index per vertex.
pub fn components(x: &SimplicialSet) -> Vec<usize> {
    fn find(parent: &mut [usize], mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    let mut parent: Vec<usize> = (0..x.count(0)).collect();
    for e in x.refs(1) {
        let faces = &x.generator(e).faces;
        let (a, b) = (find(&mut parent, faces[0].gen.index), find(&mut parent, faces[1].gen.index));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    (0..parent.len()).map(|v| find(&mut parent, v)).collect()
}

/// `(surjective, bijective)` on path components.
pub fn pi0_map(p: &SimplicialMap) -> (bool, bool) {
    let src = components(p.dom());
    let dst = components(p.cod());
    let image: BTreeSet<(usize, usize)> = (0..src.len())
        .map(|v| (src[v], dst[p.image_of(SimplexRef::new(0, v)).gen.index]))
        .collect();
    let hit: BTreeSet<usize> = image.iter().map(|&(_, b)| b).collect();
    let all: BTreeSet<usize> = dst.iter().copied().collect();
    let surjective = hit == all;
    let sources: BTreeSet<usize> = image.iter().map(|&(a, _)| a).collect();
    (surjective, surjective && sources.len() == hit.len())
}

/// Report for an arbitrary map `p: X → B` read as a stage-`n` projection.
pub fn connectivity_report_for_map(
    p: &SimplicialMap,
    n: usize,
    simply_connected_b: bool,
) -> Result<ConnectivityReport> {
    if simply_connected_b {
        let h1 = homology(p.cod(), 1);
        if !h1.is_trivial() {
            return Err(Error::Precondition(format!(
                "simply-connected flag set but H_1 of the target is {h1}"
            )));
        }
    }
    let (surjective, bijective) = pi0_map(p);
    let mut r = ConnectivityReport {
        stage: n,
        pi0_surjective: surjective,
        pi0_bijective: None,
        h1_epi: None,
        h_iso_below: Vec::new(),
        h_epi_at: None,
        caveats: vec![CAVEAT_HOMOTOPY.to_string()],
    };
    if n >= 1 {
        r.pi0_bijective = Some(bijective);
        r.h1_epi = Some(induced_homology_map(p, 1).is_epi);
        r.caveats.push(CAVEAT_H1.to_string());
    }
    if simply_connected_b {
        if n >= 2 {
            r.h_iso_below = (0..n).map(|i| (i, induced_homology_map(p, i).is_iso)).collect();
            r.h_epi_at = Some((n, induced_homology_map(p, n).is_epi));
            r.caveats.push(CAVEAT_SIMPLY_CONNECTED.to_string());
        } else {
            r.caveats.push(CAVEAT_FLAG_UNUSED.to_string());
        }
    }
    Ok(r)
}

pub fn connectivity_report(t: &Tower, n: usize, simply_connected_b: bool) -> Result<ConnectivityReport> {
    if n > t.cap() {
        return Err(Error::OutOfRange(format!("stage {n} is above the cap {}", t.cap())));
    }
    connectivity_report_for_map(t.projection(n), n, simply_connected_b)
}
