use std::fmt;
use std::sync::Arc;

use clap::ValueEnum;
use cwapprox::homology::connectivity_report;
use cwapprox::simplicial::{terminal_map, standard_simplex, text::print_map};
use cwapprox::{
    build_tower, check_intersection, check_subcomplex, check_variant_coincidence,
    induced_tower_map, Budget, GeneratorSubset, SimplicialMap, Tower, TowerMap, Variant,
};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Functor,
    Subcomplex,
    Intersect,
    Connectivity,
    Variant,
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.to_possible_value().expect("no skipped variants");
        f.write_str(s.get_name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Informational; not counted.
    Note,
}

/// One report line: `<status> <suite> <check> [detail]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckLine {
    pub status: Status,
    pub suite: Suite,
    pub check: String,
    pub detail: String,
}

impl CheckLine {
    fn new(suite: Suite, check: impl Into<String>, pass: bool) -> Self {
        CheckLine {
            status: if pass { Status::Pass } else { Status::Fail },
            suite,
            check: check.into(),
            detail: String::new(),
        }
    }

    fn note(suite: Suite, detail: impl Into<String>) -> Self {
        CheckLine { status: Status::Note, suite, check: "caveat".into(), detail: detail.into() }
    }

    fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }

    pub fn is_failure(&self) -> bool {
        self.status == Status::Fail
    }

    pub fn is_check(&self) -> bool {
        self.status != Status::Note
    }
}

impl fmt::Display for CheckLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match self.status {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Note => "note",
        };
        write!(f, "{status} {} {}", self.suite, self.check)?;
        if !self.detail.is_empty() {
            write!(f, " {}", self.detail)?;
        }
        Ok(())
    }
}

pub(crate) struct Context {
    pub f: SimplicialMap,
    pub cap: usize,
    pub variant: Variant,
    pub family: Option<Vec<GeneratorSubset>>,
    pub simply_connected: bool,
}

type Lines = Result<Vec<CheckLine>, CliError>;

pub(crate) fn run(suite: Suite, ctx: &Context, budget: &mut Budget) -> Lines {
    match suite {
        Suite::Functor => functor(ctx, budget),
        Suite::Subcomplex => subcomplex(ctx, budget),
        Suite::Intersect => intersect(ctx, budget),
        Suite::Connectivity => connectivity(ctx, budget),
        Suite::Variant => Ok(vec![CheckLine::new(
            Suite::Variant,
            "byte-identical",
            check_variant_coincidence(&ctx.f, ctx.cap, budget)?,
        )]),
    }
}

fn tower(f: &SimplicialMap, ctx: &Context, budget: &mut Budget) -> Result<Arc<Tower>, CliError> {
    Ok(Arc::new(build_tower(f, ctx.cap, ctx.variant, budget)?))
}

fn same(a: &TowerMap, b: &TowerMap) -> bool {
    let text = |t: &TowerMap| t.stage_maps().iter().map(print_map).collect::<Vec<_>>();
    a.stage_maps() == b.stage_maps() && text(a) == text(b)
}

/// Identity law, plus both unit laws against the square collapsing
/// everything to a point (a non-injective bottom map whenever B has more
/// than one vertex).
fn functor(ctx: &Context, budget: &mut Budget) -> Lines {
    let s = Suite::Functor;
    let f = &ctx.f;
    let t = tower(f, ctx, budget)?;
    let id = induced_tower_map(
        &SimplicialMap::identity(f.dom().clone()),
        &SimplicialMap::identity(f.cod().clone()),
        &t,
        &t,
    )?;
    let point = Arc::new(standard_simplex(0));
    let point_f = SimplicialMap::identity(point.clone());
    let pt = tower(&point_f, ctx, budget)?;
    let collapse = induced_tower_map(&terminal_map(f.dom().clone()), &terminal_map(f.cod().clone()), &t, &pt)?;
    let point_id = induced_tower_map(&point_f, &point_f, &pt, &pt)?;

    let mut lines = vec![
        CheckLine::new(s, "identity-square", id.is_identity()),
        CheckLine::new(s, "identity-invariants", id.check_invariants().is_ok()),
        CheckLine::new(s, "collapse-invariants", collapse.check_invariants().is_ok()),
    ];
    lines.push(CheckLine::new(s, "left-unit", same(&id.then(&collapse)?, &collapse)));
    lines.push(CheckLine::new(s, "right-unit", same(&collapse.then(&point_id)?, &collapse)));
    Ok(lines)
}

fn family(ctx: &Context, suite: Suite) -> Result<&[GeneratorSubset], CliError> {
    ctx.family
        .as_deref()
        .ok_or_else(|| CliError::Usage(format!("suite {suite} needs --family")))
}

/// Each member `Y ⊆ B` gives the square `(∅ → Y) → (A → B)`; every stage
/// map of the induced tower map must be a subset inclusion.
fn subcomplex(ctx: &Context, budget: &mut Budget) -> Lines {
    let s = Suite::Subcomplex;
    let b = ctx.f.cod();
    let t = tower(&ctx.f, ctx, budget)?;
    let top = SimplicialMap::from_empty(ctx.f.dom().clone());
    let mut lines = Vec::new();
    for (k, member) in family(ctx, s)?.iter().enumerate() {
        let (y, inc) = member.to_simplicial_set(b)?;
        let ty = tower(&SimplicialMap::from_empty(y), ctx, budget)?;
        let tm = induced_tower_map(&top, &inc, &ty, &t)?;
        let report = check_subcomplex(&tm);
        for (n, ok) in report.stages.iter().enumerate() {
            let mut line = CheckLine::new(s, format!("member-{k}-stage-{n}"), *ok);
            if let Some((_, r)) = report.witness.filter(|(w, _)| *w == n) {
                line = line.with_detail(format!("generator {r}"));
            }
            lines.push(line);
        }
    }
    Ok(lines)
}

fn intersect(ctx: &Context, budget: &mut Budget) -> Lines {
    let s = Suite::Intersect;
    let report = check_intersection(ctx.f.cod(), family(ctx, s)?, ctx.cap, ctx.variant, budget)?;
    Ok(report
        .stages
        .iter()
        .map(|st| {
            CheckLine::new(s, format!("stage-{}", st.stage), st.holds)
                .with_detail(format!("meet {} image {}", st.meet_size, st.image_size))
        })
        .collect())
}

fn connectivity(ctx: &Context, budget: &mut Budget) -> Lines {
    let s = Suite::Connectivity;
    let t = tower(&ctx.f, ctx, budget)?;
    let mut lines = Vec::new();
    let mut caveats: Vec<String> = Vec::new();
    for n in 0..=ctx.cap {
        let r = connectivity_report(&t, n, ctx.simply_connected)?;
        let mut push = |name: String, ok: bool| lines.push(CheckLine::new(s, format!("stage-{n}-{name}"), ok));
        push("pi0-surjective".into(), r.pi0_surjective);
        if let Some(ok) = r.pi0_bijective {
            push("pi0-bijective".into(), ok);
        }
        if let Some(ok) = r.h1_epi {
            push("h1-epi".into(), ok);
        }
        for (i, ok) in &r.h_iso_below {
            push(format!("h{i}-iso"), *ok);
        }
        if let Some((i, ok)) = r.h_epi_at {
            push(format!("h{i}-epi"), ok);
        }
        for c in r.caveats {
            if !caveats.contains(&c) {
                caveats.push(c);
            }
        }
    }
    lines.extend(caveats.into_iter().map(|c| CheckLine::note(s, c)));
    Ok(lines)
}
