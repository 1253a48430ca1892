//! Admissibility tables: lower bounds, best known constructions per column,
//! and comparison against a reference table.

pub mod planner;
pub mod reference;

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::field::prime_power;
use crate::bounds::{lower_bound, Admissibility, LowerBound, Params2};
use crate::error::{Error, Result};

pub use planner::{column_of, plan, Planner, Witness, DEFAULT_DEPTH};
pub use reference::{compare_with_reference, parse_reference, reference_tables, CellDiff, ReferenceRow, TableDiff};

/// Construction families, in table order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Column {
    /// Multiplication of the length.
    Length,
    /// Multiplication of the alphabet.
    Alphabet,
    /// t-fold 1-perfect codes.
    Perfect,
    /// Splitting of the coordinates into q-blocks.
    Splitting,
    /// Splitting of the alphabet of a 1-perfect code.
    SplitAlphabet,
}

impl Column {
    pub const ALL: [Column; 5] = [
        Column::Length,
        Column::Alphabet,
        Column::Perfect,
        Column::Splitting,
        Column::SplitAlphabet,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            Column::Length => "*",
            Column::Alphabet => "q",
            Column::Perfect => "P",
            Column::Splitting => "F",
            Column::SplitAlphabet => "S",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Column> {
        Column::ALL.into_iter().find(|c| c.symbol() == s)
    }

    /// Whether the family can produce colorings over alphabet q at all.
    pub fn applies(self, q: u32) -> bool {
        match self {
            Column::Length | Column::Perfect => true,
            Column::Alphabet => (2..q).any(|d| q.is_multiple_of(d)),
            Column::Splitting => prime_power(q as u64).is_some(),
            Column::SplitAlphabet => [2, 3].iter().any(|&q0| q.is_multiple_of(q0) && q / q0 >= 2),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    /// The lower bound is attained.
    Settled,
    /// A construction exists above the lower bound.
    Gap,
    /// No construction is known.
    Unknown,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Settled => "settled",
            Status::Gap => "gap",
            Status::Unknown => "unknown",
        }
    }

    /// The marker used in printed tables.
    pub fn marker(self) -> &'static str {
        match self {
            Status::Settled => "",
            Status::Gap => "-?-",
            Status::Unknown => "???",
        }
    }

    pub fn from_name(s: &str) -> Option<Status> {
        [Status::Settled, Status::Gap, Status::Unknown]
            .into_iter()
            .find(|x| x.name() == s)
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One table row.
#[derive(Clone, Debug)]
pub struct AdmissibilityRecord {
    pub params: Params2,
    pub lb: LowerBound,
    pub columns: BTreeMap<Column, Witness>,
    pub ub: Option<Witness>,
    pub status: Status,
}

/// Table headers, in order.
pub const HEADERS: [&str; 15] = [
    "q", "b+c", "b'+c'", "b", "c", "a", "k", "LB", "*", "q", "P", "F", "S", "UB", "status",
];

impl AdmissibilityRecord {
    fn new(params: Params2, lb: LowerBound, columns: BTreeMap<Column, Witness>) -> Self {
        let ub = columns.values().min().cloned();
        let status = match &ub {
            None => Status::Unknown,
            Some(w) if w.n as u64 <= lb.value => Status::Settled,
            Some(_) => Status::Gap,
        };
        AdmissibilityRecord {
            params,
            lb,
            columns,
            ub,
            status,
        }
    }

    /// Cells in [`HEADERS`] order: `.` for a column that does not apply to
    /// q, `-` for no entry.
    pub fn cells(&self) -> Vec<String> {
        let p = &self.params;
        let mut out = vec![
            p.q.to_string(),
            (p.b + p.c).to_string(),
            p.reduced_sum().to_string(),
            p.b.to_string(),
            p.c.to_string(),
            self.lb.degree().to_string(),
            self.lb.divisibility().map_or("-".into(), |(_, n)| n.to_string()),
            self.lb.value.to_string(),
        ];
        for column in Column::ALL {
            out.push(if !column.applies(p.q) {
                ".".into()
            } else {
                self.columns.get(&column).map_or("-".into(), |w| w.n.to_string())
            });
        }
        out.push(self.ub.as_ref().map_or("-".into(), |w| w.n.to_string()));
        out.push(self.status.name().into());
        out
    }
}

/// The (b, c) with b ≥ c ≥ 1 and b+c ≤ `max_bc` that pass the eigenvalue,
/// divisibility and c = 1 conditions, ordered by (b+c, b′+c′, b).
pub fn table_rows(q: u32, max_bc: u64) -> Result<Vec<(Params2, LowerBound)>> {
    let mut rows = Vec::new();
    let mut s = q as u64;
    while s <= max_bc {
        for c in 1..=s / 2 {
            if let Admissibility::Bounded(lb) = lower_bound(q, s - c, c)? {
                rows.push((Params2::new(q, s - c, c)?, lb));
            }
        }
        s += q as u64;
    }
    rows.sort_by_key(|(p, _)| (p.b + p.c, p.reduced_sum(), p.b));
    Ok(rows)
}

/// Lower bounds, per-column constructions, upper bound and status for every
/// admissible row up to b+c ≤ `max_bc`.
pub fn build_table(q: u32, max_bc: u64, depth: usize) -> Result<Vec<AdmissibilityRecord>> {
    if q < 2 {
        return Err(Error::param(format!("q = {q} must be at least 2")));
    }
    if !max_bc.is_multiple_of(q as u64) {
        return Err(Error::param(format!("max b+c = {max_bc} is not a multiple of q = {q}")));
    }
    let planner = Planner::new(q, max_bc, depth);
    Ok(table_rows(q, max_bc)?
        .into_iter()
        .map(|(p, lb)| {
            let columns = planner.columns(p.b, p.c);
            AdmissibilityRecord::new(p, lb, columns)
        })
        .collect())
}
