//! n-ary quasigroups of order q.

use std::fmt;

use crate::codes::MdsPartition;
use crate::error::{Error, Result};
use crate::hamming::{increment, rank_usize, Symbol};
use crate::rng::SplitMix64;

/// A map `{0..q-1}^arity -> {0..q-1}` that is a bijection in each argument.
pub trait Quasigroup: Send + Sync {
    fn arity(&self) -> usize;
    fn order(&self) -> u32;
    fn eval(&self, args: &[Symbol]) -> Symbol;
}

/// `(x_1 + ... + x_m) mod q`, optionally conjugated by seeded permutations.
#[derive(Clone, Debug)]
pub struct IteratedSum {
    arity: usize,
    q: u32,
    isotope: Option<Isotope>,
}

#[derive(Clone, Debug)]
struct Isotope {
    inputs: Vec<Vec<Symbol>>,
    output: Vec<Symbol>,
}

pub fn iterated_sum_quasigroup(arity: usize, q: u32) -> IteratedSum {
    IteratedSum {
        arity,
        q,
        isotope: None,
    }
}

impl IteratedSum {
    /// The isotope `π_0(σ_1(x_1) + ... + σ_m(x_m))` with permutations drawn
    /// from `seed`. Seed 0 gives the plain sum.
    pub fn isotope(arity: usize, q: u32, seed: u64) -> Self {
        if seed == 0 {
            return iterated_sum_quasigroup(arity, q);
        }
        let mut rng = SplitMix64::new(seed);
        let mut perm = || -> Vec<Symbol> { rng.permutation(q as usize).into_iter().map(|x| x as Symbol).collect() };
        let inputs = (0..arity).map(|_| perm()).collect();
        let output = perm();
        IteratedSum {
            arity,
            q,
            isotope: Some(Isotope { inputs, output }),
        }
    }
}

impl Quasigroup for IteratedSum {
    fn arity(&self) -> usize {
        self.arity
    }

    fn order(&self) -> u32 {
        self.q
    }

    fn eval(&self, args: &[Symbol]) -> Symbol {
        debug_assert_eq!(args.len(), self.arity);
        match &self.isotope {
            None => (args.iter().map(|&x| x as u32).sum::<u32>() % self.q) as Symbol,
            Some(iso) => {
                let s: u32 = args.iter().zip(&iso.inputs).map(|(&x, p)| p[x as usize] as u32).sum();
                iso.output[(s % self.q) as usize]
            }
        }
    }
}

/// A quasigroup stored as a value table in rank order.
#[derive(Clone)]
pub struct TableQuasigroup {
    arity: usize,
    q: u32,
    table: Vec<Symbol>,
}

impl TableQuasigroup {
    /// Wraps a table without validating it.
    pub fn from_table(arity: usize, q: u32, table: Vec<Symbol>) -> Result<Self> {
        let expected = (q as usize).checked_pow(arity as u32);
        if expected != Some(table.len()) {
            return Err(Error::param(format!(
                "table of length {} does not match q^arity",
                table.len()
            )));
        }
        Ok(TableQuasigroup { arity, q, table })
    }
}

impl fmt::Debug for TableQuasigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TableQuasigroup")
            .field("arity", &self.arity)
            .field("q", &self.q)
            .finish()
    }
}

impl Quasigroup for TableQuasigroup {
    fn arity(&self) -> usize {
        self.arity
    }

    fn order(&self) -> u32 {
        self.q
    }

    fn eval(&self, args: &[Symbol]) -> Symbol {
        self.table[rank_usize(args, self.q)]
    }
}

/// The q-ary quasigroup h with h(x) = i iff x lies in block i of `partition`.
pub fn quasigroup_from_mds_partition(partition: &MdsPartition) -> Result<TableQuasigroup> {
    partition.validate_blocks()?;
    TableQuasigroup::from_table(partition.m(), partition.q(), partition.block_table().to_vec())
}

/// A line on which the Latin property fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineViolation {
    /// Arguments of one point on the line.
    pub args: Vec<Symbol>,
    /// The argument that varies along the line.
    pub position: usize,
}

#[derive(Clone, Debug)]
pub struct QuasigroupReport {
    pub exhaustive: bool,
    pub lines_checked: u64,
    pub violations: Vec<LineViolation>,
}

impl QuasigroupReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

const MAX_REPORTED: usize = 16;

fn line_is_latin(qg: &dyn Quasigroup, args: &mut [Symbol], pos: usize, seen: &mut [bool]) -> bool {
    let q = qg.order();
    seen.iter_mut().for_each(|s| *s = false);
    let keep = args[pos];
    let mut ok = true;
    for s in 0..q {
        args[pos] = s as Symbol;
        let v = qg.eval(args) as usize;
        if v >= q as usize || seen[v] {
            ok = false;
            break;
        }
        seen[v] = true;
    }
    args[pos] = keep;
    ok
}

/// Checks the Latin property: exhaustively if q^arity ≤ budget, otherwise on
/// `budget / q` random lines drawn from `seed`.
pub fn validate_quasigroup(qg: &dyn Quasigroup, budget: u64, seed: u64) -> QuasigroupReport {
    let q = qg.order();
    let m = qg.arity();
    let mut seen = vec![false; q as usize];
    let mut violations = Vec::new();
    let mut lines = 0u64;
    let total = (q as u64).checked_pow(m as u32);
    let exhaustive = matches!(total, Some(t) if t <= budget);
    if exhaustive {
        for pos in 0..m {
            let mut args = vec![0 as Symbol; m];
            loop {
                if args[pos] == 0 {
                    lines += 1;
                    if !line_is_latin(qg, &mut args, pos, &mut seen) && violations.len() < MAX_REPORTED {
                        violations.push(LineViolation {
                            args: args.clone(),
                            position: pos,
                        });
                    }
                }
                if !increment(&mut args, q) {
                    break;
                }
            }
        }
    } else {
        let mut rng = SplitMix64::new(seed);
        let count = (budget / q as u64).max(1);
        let mut args = vec![0 as Symbol; m];
        for _ in 0..count {
            rng.fill_vertex(q, &mut args);
            let pos = rng.below(m as u64) as usize;
            args[pos] = 0;
            lines += 1;
            if !line_is_latin(qg, &mut args, pos, &mut seen) && violations.len() < MAX_REPORTED {
                violations.push(LineViolation {
                    args: args.clone(),
                    position: pos,
                });
            }
        }
    }
    QuasigroupReport {
        exhaustive,
        lines_checked: lines,
        violations,
    }
}
