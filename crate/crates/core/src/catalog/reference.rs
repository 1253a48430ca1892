//! Reference tables in the table TSV format and cell-by-cell comparison.

use std::fmt;

use super::{AdmissibilityRecord, Column, Status, HEADERS};
use crate::error::{Error, Result};

/// The bundled reference tables for q = 3, 4 and 6.
pub fn reference_tables() -> &'static str {
    include_str!("../../data/reference_tables.tsv")
}

/// One reference row; `cells` follow [`HEADERS`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReferenceRow {
    pub q: u32,
    pub b: u64,
    pub c: u64,
    pub cells: Vec<String>,
}

/// Parses tab-separated rows; `#` lines are comments.
pub fn parse_reference(text: &str) -> Result<Vec<ReferenceRow>> {
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim_end();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let perr = |msg: String| Error::Parse { line: i + 1, msg };
        let cells: Vec<String> = line.split('\t').map(|s| s.trim().to_string()).collect();
        if cells.len() != HEADERS.len() {
            return Err(perr(format!("expected {} fields, got {}", HEADERS.len(), cells.len())));
        }
        let num = |j: usize| {
            cells[j]
                .parse::<u64>()
                .map_err(|_| perr(format!("{} = '{}' is not a number", HEADERS[j], cells[j])))
        };
        let (q, s, b, c) = (num(0)?, num(1)?, num(3)?, num(4)?);
        if b + c != s || b < c || c == 0 {
            return Err(perr(format!("inconsistent parameters b+c = {s}, b = {b}, c = {c}")));
        }
        if Status::from_name(&cells[14]).is_none() {
            return Err(perr(format!("unknown status '{}'", cells[14])));
        }
        for j in 5..14 {
            let v = &cells[j];
            if v != "-" && v != "." && v.parse::<u64>().is_err() {
                return Err(perr(format!("{} = '{v}' is not a number, '-' or '.'", HEADERS[j])));
            }
        }
        rows.push(ReferenceRow {
            q: q as u32,
            b,
            c,
            cells,
        });
    }
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellDiff {
    pub b: u64,
    pub c: u64,
    pub column: &'static str,
    pub expected: String,
    pub actual: String,
    /// A construction column or UB that is smaller than the reference, or a
    /// status that follows from such a cell.
    pub improvement: bool,
}

impl fmt::Display for CellDiff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{}) {}: expected {}, got {}",
            self.b, self.c, self.column, self.expected, self.actual
        )?;
        if self.improvement {
            write!(f, " (improvement)")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TableDiff {
    pub cells: Vec<CellDiff>,
    /// Reference rows absent from the generated table.
    pub missing_rows: Vec<(u64, u64)>,
    /// Generated rows absent from the reference.
    pub extra_rows: Vec<(u64, u64)>,
}

impl TableDiff {
    pub fn is_empty(&self) -> bool {
        self.cells.is_empty() && self.missing_rows.is_empty() && self.extra_rows.is_empty()
    }
}

impl fmt::Display for TableDiff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (b, c) in &self.missing_rows {
            writeln!(f, "({b},{c}) missing from the generated table")?;
        }
        for (b, c) in &self.extra_rows {
            writeln!(f, "({b},{c}) not in the reference")?;
        }
        for d in &self.cells {
            writeln!(f, "{d}")?;
        }
        Ok(())
    }
}

fn is_construction(header_index: usize) -> bool {
    (8..=13).contains(&header_index)
}

/// Compares `records` with the reference rows of the same q and
/// b+c ≤ the largest b+c among the records.
pub fn compare_with_reference(records: &[AdmissibilityRecord], reference: &[ReferenceRow]) -> TableDiff {
    let mut diff = TableDiff::default();
    let Some(q) = records.first().map(|r| r.params.q) else {
        return diff;
    };
    let max_bc = records.iter().map(|r| r.params.b + r.params.c).max().unwrap_or(0);
    let wanted: Vec<&ReferenceRow> = reference.iter().filter(|r| r.q == q && r.b + r.c <= max_bc).collect();
    for r in &wanted {
        if !records.iter().any(|x| (x.params.b, x.params.c) == (r.b, r.c)) {
            diff.missing_rows.push((r.b, r.c));
        }
    }
    for rec in records {
        let (b, c) = (rec.params.b, rec.params.c);
        let Some(row) = wanted.iter().find(|r| (r.b, r.c) == (b, c)) else {
            diff.extra_rows.push((b, c));
            continue;
        };
        let cells = rec.cells();
        let mut ub_improved = false;
        for j in 0..HEADERS.len() {
            let (expected, actual) = (&row.cells[j], &cells[j]);
            if expected == actual {
                continue;
            }
            let improvement = if is_construction(j) {
                match (expected.parse::<u64>(), actual.parse::<u64>()) {
                    (Ok(e), Ok(a)) => a < e,
                    (Err(_), Ok(_)) => expected == "-",
                    _ => false,
                }
            } else {
                j == 14 && ub_improved
            };
            if j == 13 {
                ub_improved = improvement;
            }
            diff.cells.push(CellDiff {
                b,
                c,
                column: HEADERS[j],
                expected: expected.clone(),
                actual: actual.clone(),
                improvement,
            });
        }
    }
    diff
}

/// The reference value of one construction column, if printed.
pub fn reference_column(row: &ReferenceRow, column: Column) -> Option<u64> {
    let j = 8 + Column::ALL.iter().position(|&c| c == column)?;
    row.cells[j].parse().ok()
}
