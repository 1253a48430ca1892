//! Coloring files, quotient-matrix files and table rendering.
//!
//! A coloring file starts with the line `HPC1 <n> <q> <k> <mode>`:
//!
//! * `DENSE`: q^n bytes, the colors 1..=k in rank order;
//! * `DENSE RLE`: runs of (u32 little-endian length, u8 color);
//! * `RECIPE`: a recipe in s-expression form, rebuilt on reading.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::catalog::{AdmissibilityRecord, HEADERS};
use crate::coloring::{Coloring, QuotientMatrix};
use crate::constructions::build;
use crate::error::{Error, Result};
use crate::hamming::GraphShape;
use crate::recipe::Recipe;

pub const MAGIC: &str = "HPC1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FileMode {
    Dense,
    DenseRle,
    Recipe,
}

impl FileMode {
    fn tag(self) -> &'static str {
        match self {
            FileMode::Dense => "DENSE",
            FileMode::DenseRle => "DENSE RLE",
            FileMode::Recipe => "RECIPE",
        }
    }
}

/// The parsed first line of a coloring file.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Header {
    pub shape: GraphShape,
    pub k: u8,
    pub mode: FileMode,
}

fn parse_header(line: &str) -> Result<Header> {
    let perr = |msg: String| Error::Parse { line: 1, msg };
    let f: Vec<&str> = line.split_whitespace().collect();
    if f.first() != Some(&MAGIC) {
        return Err(perr(format!("expected '{MAGIC}' header")));
    }
    if f.len() < 5 {
        return Err(perr("header needs n, q, k and a mode".into()));
    }
    let num = |s: &str| s.parse::<u64>().map_err(|_| perr(format!("'{s}' is not a number")));
    let (n, q, k) = (num(f[1])?, num(f[2])?, num(f[3])?);
    let mode = match &f[4..] {
        ["DENSE"] => FileMode::Dense,
        ["DENSE", "RLE"] => FileMode::DenseRle,
        ["RECIPE"] => FileMode::Recipe,
        other => return Err(perr(format!("unknown mode '{}'", other.join(" ")))),
    };
    if k == 0 || k > 255 {
        return Err(perr(format!("k = {k} out of range")));
    }
    let shape = GraphShape::new(n as usize, q as u32).map_err(|e| perr(e.to_string()))?;
    Ok(Header {
        shape,
        k: k as u8,
        mode,
    })
}

/// Writes `c` in the given mode. Dense modes tabulate the coloring within
/// `budget`; `Recipe` needs an attached recipe.
pub fn write_coloring(w: &mut impl Write, c: &Coloring, mode: FileMode, budget: u64) -> Result<()> {
    let s = c.shape();
    writeln!(w, "{MAGIC} {} {} {} {}", s.n(), s.q(), c.colors(), mode.tag())?;
    match mode {
        FileMode::Recipe => {
            let r = c
                .recipe()
                .ok_or_else(|| Error::param("the coloring has no recipe; write it in a dense mode"))?;
            writeln!(w, "{r}")?;
        }
        FileMode::Dense => {
            let m = c.materialize(budget)?;
            w.write_all(m.dense_table().expect("materialized"))?;
        }
        FileMode::DenseRle => {
            let m = c.materialize(budget)?;
            let table = m.dense_table().expect("materialized");
            let mut i = 0;
            while i < table.len() {
                let color = table[i];
                let mut j = i;
                while j < table.len() && table[j] == color && j - i < u32::MAX as usize {
                    j += 1;
                }
                w.write_all(&((j - i) as u32).to_le_bytes())?;
                w.write_all(&[color])?;
                i = j;
            }
        }
    }
    Ok(())
}

/// Reads a coloring file. Recipe files are rebuilt and checked against the
/// header; dense files must fit `budget`.
pub fn read_coloring(r: &mut impl Read, budget: u64) -> Result<Coloring> {
    let mut reader = BufReader::new(r);
    let mut line = String::new();
    reader.read_line(&mut line)?;
    let h = parse_header(line.trim_end())?;
    let len = || {
        h.shape
            .vertex_count_within(budget)
            .ok_or_else(|| h.shape.budget_error(budget))
    };
    match h.mode {
        FileMode::Recipe => {
            let mut text = String::new();
            reader.read_to_string(&mut text)?;
            let recipe: Recipe = text.parse().map_err(|e| match e {
                Error::Parse { line, msg } => Error::Parse { line: line + 1, msg },
                e => e,
            })?;
            let c = build(&recipe)?;
            if c.shape() != h.shape || c.colors() != h.k {
                return Err(Error::Parse {
                    line: 1,
                    msg: format!(
                        "header says {} with {} colors, recipe gives {} with {}",
                        h.shape,
                        h.k,
                        c.shape(),
                        c.colors()
                    ),
                });
            }
            Ok(c)
        }
        FileMode::Dense => {
            let len = len()?;
            let mut table = Vec::with_capacity(len);
            reader.read_to_end(&mut table)?;
            if table.len() != len {
                return Err(Error::param(format!(
                    "payload has {} bytes, expected {len}",
                    table.len()
                )));
            }
            Coloring::from_dense(h.shape, h.k, table)
        }
        FileMode::DenseRle => {
            let len = len()?;
            let mut raw = Vec::new();
            reader.read_to_end(&mut raw)?;
            if raw.len() % 5 != 0 {
                return Err(Error::param("run-length payload is not a sequence of 5-byte runs"));
            }
            let mut table = Vec::with_capacity(len);
            for run in raw.chunks(5) {
                let count = u32::from_le_bytes(run[..4].try_into().unwrap()) as usize;
                if table.len() + count > len {
                    return Err(Error::param(format!("runs exceed {len} vertices")));
                }
                table.resize(table.len() + count, run[4]);
            }
            if table.len() != len {
                return Err(Error::param(format!("runs cover {} of {len} vertices", table.len())));
            }
            Coloring::from_dense(h.shape, h.k, table)
        }
    }
}

pub fn save_coloring(path: &Path, c: &Coloring, mode: FileMode, budget: u64) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_coloring(&mut w, c, mode, budget)?;
    w.flush()?;
    Ok(())
}

pub fn load_coloring(path: &Path, budget: u64) -> Result<Coloring> {
    read_coloring(&mut File::open(path)?, budget)
}

/// One row per line, entries separated by whitespace or commas; `#` starts
/// a comment.
pub fn parse_matrix(text: &str) -> Result<QuotientMatrix> {
    let mut rows = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let row = line
            .split(|ch: char| ch.is_whitespace() || ch == ',')
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<u64>().map_err(|_| Error::Parse {
                    line: i + 1,
                    msg: format!("'{s}' is not a nonnegative integer"),
                })
            })
            .collect::<Result<Vec<u64>>>()?;
        rows.push(row);
    }
    QuotientMatrix::new(rows)
}

pub fn format_matrix(m: &QuotientMatrix) -> String {
    m.rows()
        .iter()
        .map(|r| r.iter().map(u64::to_string).collect::<Vec<_>>().join(" ") + "\n")
        .collect()
}

/// Tab-separated rows under a `#` header line, in the reference format.
pub fn format_table_tsv(records: &[AdmissibilityRecord]) -> String {
    let mut out = format!("# {}\n", HEADERS.join("\t"));
    for r in records {
        out.push_str(&r.cells().join("\t"));
        out.push('\n');
    }
    out
}

/// Aligned columns with (b,c) merged and the status shown as a marker.
pub fn format_table_text(records: &[AdmissibilityRecord]) -> String {
    let mut header: Vec<String> = vec!["b+c".into(), "b'+c'".into(), "(b,c)".into()];
    header.extend(HEADERS[5..14].iter().map(|s| s.to_string()));
    header.push("".into());
    let mut rows = vec![header];
    for r in records {
        let cells = r.cells();
        let mut row = vec![
            cells[1].clone(),
            cells[2].clone(),
            format!("({},{})", cells[3], cells[4]),
        ];
        row.extend(cells[5..14].iter().filter(|c| *c != ".").cloned());
        row.push(r.status.marker().into());
        rows.push(row);
    }
    // Drop columns that do not apply to this q.
    if let Some(first) = records.first() {
        let keep: Vec<bool> = first.cells()[5..14].iter().map(|c| c != ".").collect();
        let h = &mut rows[0];
        let mut j = 3;
        for k in keep {
            if k {
                j += 1;
            } else {
                h.remove(j);
            }
        }
    }
    let width: Vec<usize> = (0..rows[0].len())
        .map(|j| {
            rows.iter()
                .map(|r| r.get(j).map_or(0, |s| s.chars().count()))
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r
            .iter()
            .enumerate()
            .map(|(j, s)| format!("{:>w$}", s, w = width[j]))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}
