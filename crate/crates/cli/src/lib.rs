//! Batch front end for tower construction and checks.
//!
//! Exit codes are a stable contract: see [`exit`].

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cwapprox::factorization::io::{growth_csv, read_tower_dir, write_tower_dir};
use cwapprox::homology::{homology_all, HomologyGroup, HOMOLOGY_CSV_HEADER};
use cwapprox::simplicial::text::{parse_family, parse_map, parse_set};
use cwapprox::{build_tower, Budget, SimplicialMap, SimplicialSet, Tower, Variant, DEFAULT_BUDGET};

pub mod dot;
mod suites;

pub use suites::{CheckLine, Status, Suite};

pub mod exit {
    pub const PASS: i32 = 0;
    pub const CHECK_FAILED: i32 = 1;
    pub const INPUT_ERROR: i32 = 2;
    pub const BUDGET_EXCEEDED: i32 = 3;
}

/// Caps above this need an explicit budget.
pub const MAX_DEFAULT_CAP: usize = 3;

pub const BUDGET_ENV: &str = "CWAPPROX_BUDGET";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] cwapprox::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(cwapprox::Error::BudgetExceeded { .. }) => exit::BUDGET_EXCEEDED,
            _ => exit::INPUT_ERROR,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "cwapprox", version, about = "Functorial cell-attachment towers over finite simplicial sets")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a tower and write it to a directory.
    Build(BuildArgs),
    /// Run one suite of checks and print one line per check.
    Verify(VerifyArgs),
    /// Integral homology of a simplicial set or of a tower stage.
    Homology(HomologyArgs),
}

/// The structure map `f: A → B`. Without `--source`, `A` is empty.
#[derive(Debug, Clone, Args)]
pub struct InputArgs {
    /// Target simplicial set B.
    #[arg(long)]
    pub target: Option<PathBuf>,
    /// Source simplicial set A (requires --map).
    #[arg(long, requires = "map")]
    pub source: Option<PathBuf>,
    /// Structure map A -> B (requires --source).
    #[arg(long, requires = "source")]
    pub map: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct TowerArgs {
    #[arg(long = "max-dim", default_value_t = 2)]
    pub max_dim: usize,
    #[arg(long, value_enum, default_value_t = VariantArg::All)]
    pub variant: VariantArg,
    /// Cap on visited partial assignments per search.
    #[arg(long, env = BUDGET_ENV)]
    pub budget: Option<u64>,
}

impl TowerArgs {
    fn budget(&self) -> CliResult<Budget> {
        if self.max_dim > MAX_DEFAULT_CAP && self.budget.is_none() {
            return Err(CliError::Usage(format!(
                "--max-dim {} is above {MAX_DEFAULT_CAP}; set --budget or {BUDGET_ENV} explicitly",
                self.max_dim
            )));
        }
        Ok(Budget::new(self.budget.unwrap_or(DEFAULT_BUDGET)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    All,
    Cellular,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::All => Variant::AllMaps,
            VariantArg::Cellular => Variant::Cellular,
        }
    }
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub tower: TowerArgs,
    /// Output directory for the serialized tower.
    #[arg(long)]
    pub out: PathBuf,
    /// Also write a Graphviz file of stage growth and the top 1-skeleton.
    #[arg(long)]
    pub dot: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    /// Read a built tower instead of --target/--source/--map.
    #[arg(long, conflicts_with_all = ["target", "source", "map"])]
    pub tower: Option<PathBuf>,
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub params: TowerArgs,
    /// Subset family of the target (subcomplex and intersect suites).
    #[arg(long)]
    pub family: Option<PathBuf>,
    /// Assert the target is simply connected (connectivity suite).
    #[arg(long)]
    pub simply_connected: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
}

#[derive(Debug, Args)]
pub struct HomologyArgs {
    /// A simplicial set file or a tower directory.
    pub input: PathBuf,
    /// Only this degree; all degrees through the dimension otherwise.
    #[arg(long)]
    pub degree: Option<usize>,
    /// Stage of a tower directory; defaults to the top stage.
    #[arg(long)]
    pub stage: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Core(cwapprox::Error::Io(format!("{}: {e}", path.display()))))
}

fn in_file(path: &Path, e: cwapprox::Error) -> CliError {
    let name = path.display();
    CliError::Core(match e {
        cwapprox::Error::Parse { line, column, message } => cwapprox::Error::Parse {
            line,
            column,
            message: format!("{name}: {message}"),
        },
        cwapprox::Error::Invalid(m) => cwapprox::Error::Invalid(format!("{name}: {m}")),
        other => other,
    })
}

pub fn load_set(path: &Path) -> CliResult<Arc<SimplicialSet>> {
    Ok(Arc::new(parse_set(&read_text(path)?).map_err(|e| in_file(path, e))?))
}

impl InputArgs {
    /// Parses and validates every input before anything is built.
    pub fn structure_map(&self) -> CliResult<SimplicialMap> {
        let target = self
            .target
            .as_deref()
            .ok_or_else(|| CliError::Usage("--target is required".into()))?;
        let b = load_set(target)?;
        match (&self.source, &self.map) {
            (Some(src), Some(map)) => {
                let a = load_set(src)?;
                parse_map(&read_text(map)?, a, b).map_err(|e| in_file(map, e))
            }
            _ => Ok(SimplicialMap::from_empty(b)),
        }
    }
}

fn build(args: &BuildArgs, out: &mut dyn Write) -> CliResult<i32> {
    let f = args.input.structure_map()?;
    let mut budget = args.tower.budget()?;
    let tower = build_tower(&f, args.tower.max_dim, args.tower.variant.into(), &mut budget)?;
    write_tower_dir(&tower, &args.out)?;
    if let Some(path) = &args.dot {
        let mut text = dot::growth_dot(&tower);
        if tower.approximation().count(1) <= dot::MAX_SKELETON_EDGES {
            text.push_str(&dot::one_skeleton_dot(tower.approximation()));
        }
        fs::write(path, text).map_err(cwapprox::Error::from)?;
    }
    let _ = write!(out, "{}", growth_csv(&tower));
    Ok(exit::PASS)
}

fn homology_cmd(args: &HomologyArgs, out: &mut dyn Write) -> CliResult<i32> {
    let x = if args.input.is_dir() {
        let t = read_tower_dir(&args.input)?;
        let n = args.stage.unwrap_or(t.cap());
        if n > t.cap() {
            return Err(CliError::Usage(format!("stage {n} is above the cap {}", t.cap())));
        }
        t.stage(n).clone()
    } else {
        load_set(&args.input)?
    };
    let mut groups = homology_all(&x);
    if let Some(i) = args.degree {
        let g = groups.get(i).cloned().unwrap_or(HomologyGroup { dim: i, betti: 0, torsion: vec![] });
        groups = vec![g];
    }
    match args.format {
        Format::Csv => {
            let _ = writeln!(out, "{HOMOLOGY_CSV_HEADER}");
            for g in &groups {
                let _ = writeln!(out, "{}", g.csv_row());
            }
        }
        Format::Text => {
            for g in &groups {
                let torsion: Vec<String> = g.torsion.iter().map(ToString::to_string).collect();
                let _ = writeln!(
                    out,
                    "H{} = {}\tbetti {}\ttorsion [{}]",
                    g.dim,
                    g,
                    g.betti,
                    torsion.join(" ")
                );
            }
        }
    }
    Ok(exit::PASS)
}

fn verify(args: &VerifyArgs, out: &mut dyn Write) -> CliResult<i32> {
    let (f, cap) = match &args.tower {
        Some(dir) => {
            let t: Tower = read_tower_dir(dir)?;
            (t.structure_map().clone(), t.cap())
        }
        None => (args.input.structure_map()?, args.params.max_dim),
    };
    let family = match &args.family {
        Some(p) => Some(parse_family(&read_text(p)?).map_err(|e| in_file(p, e))?),
        None => None,
    };
    let mut budget = args.params.budget()?;
    let ctx = suites::Context {
        f,
        cap,
        variant: args.params.variant.into(),
        family,
        simply_connected: args.simply_connected,
    };
    let lines = suites::run(args.suite, &ctx, &mut budget)?;
    let failed = lines.iter().filter(|l| l.is_failure()).count();
    let checks = lines.iter().filter(|l| l.is_check()).count();
    for l in &lines {
        let _ = writeln!(out, "{l}");
    }
    let _ = writeln!(out, "summary {} passed {failed} failed", checks - failed);
    Ok(if failed == 0 { exit::PASS } else { exit::CHECK_FAILED })
}

/// Runs one invocation; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { exit::INPUT_ERROR } else { exit::PASS };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Build(a) => build(a, out),
        Command::Verify(a) => verify(a, out),
        Command::Homology(a) => homology_cmd(a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
