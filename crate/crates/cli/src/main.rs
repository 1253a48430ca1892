//! `hamcol`: bounds, constructions and verification of perfect colorings of
//! Hamming graphs.
//!
//! Exit codes: 0 success (params: settled), 1 verification failed or
//! weight distribution infeasible, 2 inadmissible parameters, 3 gap or
//! unknown status, 4 any other error. `HPC_BUDGET` overrides the
//! materialization budget.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use hamcol_core::analysis::{
    extract_quotient, verify_full, verify_sampled, weight_distribution_bruteforce, weight_distribution_recurrence,
    VerifyReport,
};
use hamcol_core::bounds::{
    c1_condition, divisibility_bound, eigenvalue_condition, fdf_bound, lower_bound, Admissibility, Divisibility,
    Params2,
};
use hamcol_core::catalog::{build_table, compare_with_reference, parse_reference, plan, Status, DEFAULT_DEPTH};
use hamcol_core::coloring::default_budget;
use hamcol_core::constructions::build;
use hamcol_core::io::{
    format_matrix, format_table_text, format_table_tsv, load_coloring, parse_matrix, save_coloring, write_coloring,
    FileMode,
};
use hamcol_core::{Error, GraphShape, QuotientMatrix, Recipe};

const EXIT_FAIL: u8 = 1;
const EXIT_INADMISSIBLE: u8 = 2;
const EXIT_OPEN: u8 = 3;
const EXIT_ERROR: u8 = 4;

#[derive(Parser)]
#[command(name = "hamcol", version, about = "Perfect 2-colorings of Hamming graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Necessary conditions, lower bound, best construction and status of (b, c).
    Params {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        b: u64,
        #[arg(long)]
        c: u64,
        /// Planner search depth.
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
    },
    /// Builds a recipe and writes a coloring file.
    Construct {
        /// Inline recipe, e.g. "(perfect :r 2 :q 3 :t 1)".
        recipe: Option<String>,
        /// Read the recipe from a file instead.
        #[arg(long, conflicts_with = "recipe")]
        file: Option<PathBuf>,
        /// Output path; standard output if absent.
        #[arg(long, short)]
        out: Option<PathBuf>,
        /// Write a dense table instead of the recipe.
        #[arg(long)]
        materialize: bool,
        /// Run-length encode the dense table.
        #[arg(long, requires = "materialize")]
        rle: bool,
    },
    /// Checks that a coloring file is perfect.
    Verify {
        file: PathBuf,
        /// Expected 2-coloring parameters.
        #[arg(long, num_args = 2, value_names = ["B", "C"], conflicts_with = "matrix")]
        expect: Option<Vec<u64>>,
        /// Expected quotient matrix file.
        #[arg(long)]
        matrix: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Mode::Full)]
        mode: Mode,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Weight distribution by distance from a vertex.
    Wdist {
        /// Coloring file.
        file: Option<PathBuf>,
        /// Quotient matrix file; requires --n and --q without a coloring file.
        #[arg(long)]
        matrix: Option<PathBuf>,
        /// Origin vertex as comma-separated symbols; zero by default.
        #[arg(long)]
        origin: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        q: Option<u32>,
        /// Color of the origin in matrix-only mode.
        #[arg(long, default_value_t = 1)]
        start: u8,
    },
    /// Admissibility table for alphabet q.
    Table {
        #[arg(long)]
        q: u32,
        /// Largest b+c; a multiple of q.
        #[arg(long)]
        max_bc: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Reference table to compare against; exit 0 iff identical.
        #[arg(long)]
        fixture: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Full,
    Sample,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Tsv,
    Text,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn run(command: Command) -> Result<u8> {
    let mut out = std::io::stdout().lock();
    match command {
        Command::Params { q, b, c, depth } => params(&mut out, q, b, c, depth),
        Command::Construct {
            recipe,
            file,
            out: path,
            materialize,
            rle,
        } => {
            let text = match (recipe, file) {
                (Some(t), _) => t,
                (None, Some(f)) => std::fs::read_to_string(&f).with_context(|| format!("reading {}", f.display()))?,
                (None, None) => bail!("give a recipe or --file"),
            };
            let mode = match (materialize, rle) {
                (false, _) => FileMode::Recipe,
                (true, false) => FileMode::Dense,
                (true, true) => FileMode::DenseRle,
            };
            construct(&mut out, &text, path.as_deref(), mode)
        }
        Command::Verify {
            file,
            expect,
            matrix,
            mode,
            samples,
            seed,
        } => verify(&mut out, &file, expect, matrix.as_deref(), mode, samples, seed),
        Command::Wdist {
            file,
            matrix,
            origin,
            n,
            q,
            start,
        } => wdist(
            &mut out,
            file.as_deref(),
            matrix.as_deref(),
            origin.as_deref(),
            n,
            q,
            start,
        ),
        Command::Table {
            q,
            max_bc,
            format,
            fixture,
            depth,
        } => table(&mut out, q, max_bc, format, fixture.as_deref(), depth),
    }
}

fn params(out: &mut impl Write, q: u32, b: u64, c: u64, depth: usize) -> Result<u8> {
    let p = Params2::new(q, b, c)?;
    writeln!(out, "q = {q}, (b, c) = ({}, {})", p.b, p.c)?;
    match eigenvalue_condition(q, p.b, p.c) {
        Some(i) => writeln!(out, "eigenvalue: ok, (b+c)/q = {i}")?,
        None => writeln!(out, "eigenvalue: fails, q does not divide b + c")?,
    }
    if eigenvalue_condition(q, p.b, p.c).is_some() {
        match divisibility_bound(q, p.b, p.c)? {
            Divisibility::Inadmissible { prime } => writeln!(
                out,
                "divisibility: fails, {prime} divides b′+c′ = {} but not q",
                p.reduced_sum()
            )?,
            Divisibility::Bound { k, n } => writeln!(out, "divisibility: ok, k = {k}, n ≥ {n}")?,
        }
    }
    if p.c == 1 {
        let ok = c1_condition(q, p.b);
        writeln!(out, "c = 1 condition: {}", if ok { "ok" } else { "fails" })?;
    }
    if let Some(f) = fdf_bound(q, p.b, p.c) {
        writeln!(out, "correlation immunity: n ≥ {f}")?;
    }
    let lb = match lower_bound(q, p.b, p.c)? {
        Admissibility::Inadmissible(obs) => {
            for o in obs {
                writeln!(out, "obstruction: {o}")?;
            }
            writeln!(out, "status: inadmissible")?;
            return Ok(EXIT_INADMISSIBLE);
        }
        Admissibility::Bounded(lb) => lb,
    };
    writeln!(out, "LB = {}", lb.value)?;
    for r in &lb.reasons {
        writeln!(out, "  {r}")?;
    }
    let witness = plan(q, p.b, p.c, depth);
    let status = match &witness {
        None => {
            writeln!(out, "UB: none known")?;
            Status::Unknown
        }
        Some(w) => {
            writeln!(out, "UB = {}, witness:", w.n)?;
            for line in w.recipe.to_string().lines() {
                writeln!(out, "  {line}")?;
            }
            if w.n as u64 <= lb.value {
                Status::Settled
            } else {
                Status::Gap
            }
        }
    };
    writeln!(out, "status: {status}")?;
    Ok(match status {
        Status::Settled => {
            writeln!(out, "n0 = {}", lb.value)?;
            0
        }
        _ => EXIT_OPEN,
    })
}

fn construct(out: &mut impl Write, text: &str, path: Option<&Path>, mode: FileMode) -> Result<u8> {
    let recipe: Recipe = text.parse()?;
    let coloring = build(&recipe)?;
    let budget = default_budget();
    match path {
        Some(p) => {
            save_coloring(p, &coloring, mode, budget).with_context(|| format!("writing {}", p.display()))?;
            let pred = recipe.predict()?;
            eprintln!("wrote {} on {} with matrix {}", p.display(), pred.shape, pred.matrix);
        }
        None => write_coloring(out, &coloring, mode, budget)?,
    }
    Ok(0)
}

fn verify(
    out: &mut impl Write,
    file: &Path,
    expect: Option<Vec<u64>>,
    matrix: Option<&Path>,
    mode: Mode,
    samples: u64,
    seed: u64,
) -> Result<u8> {
    let budget = default_budget();
    let c = load_coloring(file, budget).with_context(|| format!("reading {}", file.display()))?;
    let expected = match (expect, matrix) {
        (Some(bc), _) => Some(QuotientMatrix::two_color(c.shape().degree(), bc[0], bc[1])?),
        (None, Some(m)) => Some(read_matrix(m)?),
        (None, None) => None,
    };
    writeln!(out, "graph: {}, {} colors", c.shape(), c.colors())?;
    let expected = match expected {
        Some(m) => m,
        None => match extract_quotient(&c, budget) {
            Ok(m) => {
                writeln!(out, "extracted matrix:\n{}", format_matrix(&m).trim_end())?;
                m
            }
            Err(Error::NotPerfect {
                rank,
                color,
                observed,
                expected,
            }) => {
                writeln!(out, "FAIL: not perfect")?;
                writeln!(
                    out,
                    "witness: rank {rank} color {color}: observed {observed:?}, expected {expected:?}"
                )?;
                return Ok(EXIT_FAIL);
            }
            Err(e) => return Err(e.into()),
        },
    };
    let report = match mode {
        Mode::Full => verify_full(&c, &expected, budget)?,
        Mode::Sample => verify_sampled(&c, &expected, samples, seed)?,
    };
    print_report(out, &report)
}

fn print_report(out: &mut impl Write, report: &VerifyReport) -> Result<u8> {
    writeln!(out, "matrix:\n{}", format_matrix(&report.matrix).trim_end())?;
    writeln!(out, "checked {} vertices ({})", report.checked, report.note())?;
    if report.passed() {
        writeln!(out, "PASS")?;
        return Ok(0);
    }
    writeln!(out, "FAIL: {} violations", report.violations.len())?;
    for v in report.violations.iter().take(5) {
        writeln!(out, "witness: {v}")?;
    }
    Ok(EXIT_FAIL)
}

fn read_matrix(path: &Path) -> Result<QuotientMatrix> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(parse_matrix(&text)?)
}

fn parse_origin(text: &str, n: usize) -> Result<Vec<u8>> {
    let v = text
        .split(',')
        .map(|s| s.trim().parse::<u8>().with_context(|| format!("bad symbol '{s}'")))
        .collect::<Result<Vec<u8>>>()?;
    if v.len() != n {
        bail!("origin has {} coordinates, the graph has {n}", v.len());
    }
    Ok(v)
}

fn wdist(
    out: &mut impl Write,
    file: Option<&Path>,
    matrix: Option<&Path>,
    origin: Option<&str>,
    n: Option<usize>,
    q: Option<u32>,
    start: u8,
) -> Result<u8> {
    let budget = default_budget();
    let (shape, m, coloring, origin, start) = match file {
        Some(f) => {
            let c = load_coloring(f, budget).with_context(|| format!("reading {}", f.display()))?;
            let shape = c.shape();
            let origin = match origin {
                Some(o) => parse_origin(o, shape.n())?,
                None => vec![0; shape.n()],
            };
            shape.check(&origin)?;
            let m = match matrix {
                Some(p) => read_matrix(p)?,
                None => extract_quotient(&c, budget)?,
            };
            let start = c.color_of(&origin);
            (shape, m, Some(c), origin, start)
        }
        None => {
            let Some(p) = matrix else {
                bail!("give a coloring file or --matrix")
            };
            let (Some(n), Some(q)) = (n, q) else {
                bail!("--matrix without a coloring file needs --n and --q")
            };
            (GraphShape::new(n, q)?, read_matrix(p)?, None, vec![], start)
        }
    };
    writeln!(out, "graph: {shape}, origin color {start}")?;
    let rec = match weight_distribution_recurrence(&m, start, shape) {
        Ok(w) => w,
        Err(Error::Infeasible(msg)) => {
            writeln!(out, "recurrence: infeasible ({msg})")?;
            return Ok(EXIT_FAIL);
        }
        Err(e) => return Err(e.into()),
    };
    write!(out, "recurrence:\n{rec}")?;
    if let Some(c) = coloring {
        match weight_distribution_bruteforce(&c, &origin, budget) {
            Ok(brute) => {
                write!(out, "brute force:\n{brute}")?;
                let agree = brute == rec;
                writeln!(out, "agreement: {}", if agree { "yes" } else { "no" })?;
                if !agree {
                    return Ok(EXIT_FAIL);
                }
            }
            Err(Error::BudgetExceeded { .. }) => writeln!(out, "brute force: skipped, over budget")?,
            Err(e) => return Err(e.into()),
        }
    }
    Ok(0)
}

fn table(
    out: &mut impl Write,
    q: u32,
    max_bc: u64,
    format: Format,
    fixture: Option<&Path>,
    depth: usize,
) -> Result<u8> {
    let records = build_table(q, max_bc, depth)?;
    if let Some(path) = fixture {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let reference = parse_reference(&text)?;
        let diff = compare_with_reference(&records, &reference);
        write!(out, "{diff}")?;
        return Ok(if diff.is_empty() { 0 } else { EXIT_FAIL });
    }
    let text = match format {
        Format::Tsv => format_table_tsv(&records),
        Format::Text => format_table_text(&records),
    };
    write!(out, "{text}")?;
    Ok(0)
}
