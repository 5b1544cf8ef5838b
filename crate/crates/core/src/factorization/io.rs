//! Directory layout for serialized towers.
//!
//! ```text
//! tower.manifest        header, variant, cap
//! source.sset           A
//! target.sset           B
//! structure.smap        f: A → B
//! stage-<n>.sset        A_n
//! incl-<n>.smap         A_{n-1} → A_n   (A_{-1} = A)
//! proj-<n>.smap         A_n → B
//! squares-<n>.txt       one canonical square per line, n >= 1
//! growth.csv            stage,dimension,new_cells,cumulative_generators
//! ```

use std::fs;
use std::path::Path;
use std::sync::Arc;

use super::tower::{Tower, Variant};
use crate::error::{Error, Result};
use crate::hom_search::AttachmentSquare;
use crate::simplicial::text::{content_lines, parse_map, parse_set, print_map, print_set, Cursor};
use crate::simplicial::SimplicialMap;

pub const MANIFEST: &str = "tower.manifest";
pub const MANIFEST_HEADER: &str = "cwapprox-tower v1";
pub const GROWTH_HEADER: &str = "stage,dimension,new_cells,cumulative_generators";

pub fn growth_csv(t: &Tower) -> String {
    let mut out = String::from(GROWTH_HEADER);
    out.push('\n');
    for r in t.growth() {
        out.push_str(&format!("{},{},{},{}\n", r.stage, r.dimension, r.new_cells, r.cumulative));
    }
    out
}

pub fn squares_text(t: &Tower, n: usize) -> String {
    t.squares(n)
        .iter()
        .map(|s| s.serialize() + "\n")
        .collect()
}

/// Every file except the manifest, in a fixed order. Two towers with equal
/// content files differ at most in their variant tag.
pub fn tower_content_files(t: &Tower) -> Vec<(String, String)> {
    let mut files = vec![
        ("source.sset".to_string(), print_set(t.source())),
        ("target.sset".to_string(), print_set(t.target())),
        ("structure.smap".to_string(), print_map(t.structure_map())),
    ];
    for n in 0..=t.cap() {
        files.push((format!("stage-{n}.sset"), print_set(t.stage(n))));
        files.push((format!("incl-{n}.smap"), print_map(t.inclusion(n))));
        files.push((format!("proj-{n}.smap"), print_map(t.projection(n))));
        if n >= 1 {
            files.push((format!("squares-{n}.txt"), squares_text(t, n)));
        }
    }
    files.push(("growth.csv".to_string(), growth_csv(t)));
    files
}

pub fn manifest_text(t: &Tower) -> String {
    format!("{MANIFEST_HEADER}\nvariant {}\ncap {}\n", t.variant(), t.cap())
}

pub fn tower_files(t: &Tower) -> Vec<(String, String)> {
    let mut files = vec![(MANIFEST.to_string(), manifest_text(t))];
    files.extend(tower_content_files(t));
    files
}

pub fn write_tower_dir(t: &Tower, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir)?;
    for (name, body) in tower_files(t) {
        fs::write(dir.join(name), body)?;
    }
    Ok(())
}

fn in_file(name: &str, e: Error) -> Error {
    match e {
        Error::Parse {
            line,
            column,
            message,
        } => Error::Parse {
            line,
            column,
            message: format!("{name}: {message}"),
        },
        Error::Invalid(m) => Error::Invalid(format!("{name}: {m}")),
        other => other,
    }
}

fn read(dir: &Path, name: &str) -> Result<String> {
    fs::read_to_string(dir.join(name)).map_err(|e| Error::Io(format!("{name}: {e}")))
}

fn parse_manifest(text: &str) -> Result<(Variant, usize)> {
    let mut lines = content_lines(text);
    let bad = |line: usize, m: &str| Error::Parse {
        line,
        column: 1,
        message: format!("{MANIFEST}: {m}"),
    };
    match lines.next() {
        Some((_, l)) if l.trim() == MANIFEST_HEADER => {}
        Some((no, _)) => return Err(bad(no, "bad header")),
        None => return Err(bad(1, "empty manifest")),
    }
    let (no, l) = lines.next().ok_or_else(|| bad(2, "missing variant"))?;
    let mut c = Cursor::new(no, l);
    c.keyword("variant")?;
    let variant: Variant = c
        .word()
        .ok_or_else(|| c.error("expected a variant"))?
        .parse()
        .map_err(|_| bad(no, "unknown variant"))?;
    c.expect_end()?;
    let (no, l) = lines.next().ok_or_else(|| bad(3, "missing cap"))?;
    let mut c = Cursor::new(no, l);
    c.keyword("cap")?;
    let cap = c.number()?;
    c.expect_end()?;
    Ok((variant, cap))
}

/// Reads a tower directory and checks every tower invariant.
pub fn read_tower_dir(dir: &Path) -> Result<Tower> {
    let (variant, cap) = parse_manifest(&read(dir, MANIFEST)?)?;
    let set = |name: &str| -> Result<Arc<_>> {
        Ok(Arc::new(parse_set(&read(dir, name)?).map_err(|e| in_file(name, e))?))
    };
    let map = |name: &str, dom, cod| -> Result<SimplicialMap> {
        parse_map(&read(dir, name)?, dom, cod).map_err(|e| in_file(name, e))
    };
    let source = set("source.sset")?;
    let target = set("target.sset")?;
    let structure = map("structure.smap", source.clone(), target.clone())?;
    let mut stages: Vec<Arc<crate::simplicial::SimplicialSet>> = Vec::with_capacity(cap + 1);
    let mut inclusions = Vec::with_capacity(cap + 1);
    let mut projections = Vec::with_capacity(cap + 1);
    let mut squares = vec![Vec::new()];
    for n in 0..=cap {
        let stage = set(&format!("stage-{n}.sset"))?;
        let prev = if n == 0 { source.clone() } else { stages[n - 1].clone() };
        inclusions.push(map(&format!("incl-{n}.smap"), prev.clone(), stage.clone())?);
        projections.push(map(&format!("proj-{n}.smap"), stage.clone(), target.clone())?);
        if n >= 1 {
            let name = format!("squares-{n}.txt");
            let text = read(dir, &name)?;
            let parsed = content_lines(&text)
                .map(|(no, l)| AttachmentSquare::parse(no, l, &prev, &target))
                .collect::<Result<Vec<_>>>()
                .map_err(|e| in_file(&name, e))?;
            squares.push(parsed);
        }
        stages.push(stage);
    }
    let tower = Tower::from_parts(structure, cap, variant, stages, inclusions, projections, squares)?;
    if read(dir, "growth.csv")? != growth_csv(&tower) {
        return Err(Error::Invalid("growth.csv disagrees with the stages".into()));
    }
    Ok(tower)
}
