//! Partitions of a color class into lines: bipartite matching for q = 2 and
//! exact-cover search in general.

use std::collections::VecDeque;
use std::time::{Duration, Instant};

use crate::coloring::{Coloring, FacePartition};
use crate::error::{Error, Result};
use crate::hamming::{increment, Symbol};

const NONE: u32 = u32::MAX;

/// Ranks of the class and a rank -> class-index map.
fn class_index(c: &Coloring, color: u8, budget: u64) -> Result<(Vec<usize>, Vec<u32>)> {
    let c = c.materialize(budget)?;
    let table = c.dense_table().expect("materialized");
    let members: Vec<usize> = (0..table.len()).filter(|&r| table[r] == color).collect();
    let mut index = vec![NONE; table.len()];
    for (i, &r) in members.iter().enumerate() {
        index[r] = i as u32;
    }
    Ok((members, index))
}

fn powers(n: usize, q: usize) -> Vec<usize> {
    (0..n).map(|i| q.pow(i as u32)).collect()
}

/// Splits a color class of a binary coloring into edges by a perfect matching
/// of the induced subgraph, which is bipartite by weight parity.
pub fn edge_partition_binary(c: &Coloring, color: u8, budget: u64) -> Result<FacePartition> {
    let shape = c.shape();
    if shape.q() != 2 {
        return Err(Error::param("edge_partition_binary needs q = 2"));
    }
    let n = shape.n();
    let (members, index) = class_index(c, color, budget)?;
    if members.is_empty() {
        return Err(Error::NoPartition(format!("color {color} is empty")));
    }
    let pw = powers(n, 2);
    let adj: Vec<Vec<u32>> = members
        .iter()
        .map(|&r| pw.iter().map(|&p| index[r ^ p]).filter(|&j| j != NONE).collect())
        .collect();
    if let Some(i) = adj.iter().position(|a| a.is_empty()) {
        return Err(Error::NoPartition(format!(
            "vertex of rank {} has no neighbor of color {color}",
            members[i]
        )));
    }
    let degree = adj[0].len();
    if adj.iter().any(|a| a.len() != degree) {
        return Err(Error::NoPartition(format!(
            "the subgraph induced by color {color} is not regular"
        )));
    }
    let even = |i: usize| members[i].count_ones() % 2 == 0;
    let left: Vec<usize> = (0..members.len()).filter(|&i| even(i)).collect();
    let mut mate = vec![NONE; members.len()];
    for &u in &left {
        if !augment(u, &adj, &mut mate) {
            return Err(Error::Internal(format!(
                "no perfect matching in the {degree}-regular subgraph induced by color {color}"
            )));
        }
    }
    if mate.contains(&NONE) {
        return Err(Error::Internal("matching leaves class vertices uncovered".into()));
    }
    let mut table = vec![Vec::new(); index.len()];
    for (i, &r) in members.iter().enumerate() {
        let other = members[mate[i] as usize];
        table[r] = vec![(r ^ other).trailing_zeros() as usize];
    }
    Ok(FacePartition::from_table(shape, color, 1, table))
}

/// Breadth-first augmenting path from the free left vertex `root`.
fn augment(root: usize, adj: &[Vec<u32>], mate: &mut [u32]) -> bool {
    let mut parent = vec![NONE; mate.len()];
    let mut seen = vec![false; mate.len()];
    let mut queue = VecDeque::from([root]);
    seen[root] = true;
    while let Some(u) = queue.pop_front() {
        for &w in &adj[u] {
            let w = w as usize;
            if seen[w] {
                continue;
            }
            seen[w] = true;
            parent[w] = u as u32;
            if mate[w] == NONE {
                // Flip the path back to the root.
                let mut right = w;
                loop {
                    let left = parent[right] as usize;
                    let next = mate[left];
                    mate[right] = left as u32;
                    mate[left] = right as u32;
                    if left == root {
                        return true;
                    }
                    right = next as usize;
                }
            }
            let m = mate[w] as usize;
            if !seen[m] {
                seen[m] = true;
                queue.push_back(m);
            }
        }
    }
    false
}

/// Outcome of [`line_partition_search`].
#[derive(Clone, Debug)]
pub enum LineSearch {
    Found(FacePartition),
    /// The search space was exhausted: no partition exists.
    NotFound,
    /// Time ran out; nothing is known.
    Timeout,
}

struct Search {
    /// Class indices of each candidate line.
    lines: Vec<Vec<u32>>,
    /// Candidate lines through each class vertex, by direction.
    through: Vec<Vec<u32>>,
    covered: Vec<bool>,
    chosen: Vec<u32>,
    deadline: Instant,
    timed_out: bool,
}

impl Search {
    fn available(&self, line: u32) -> bool {
        self.lines[line as usize].iter().all(|&v| !self.covered[v as usize])
    }

    fn run(&mut self) -> bool {
        if Instant::now() >= self.deadline {
            self.timed_out = true;
        }
        if self.timed_out {
            return false;
        }
        // Most constrained uncovered vertex, lowest index on ties.
        let mut best: Option<(usize, usize)> = None;
        for v in 0..self.covered.len() {
            if self.covered[v] {
                continue;
            }
            let k = self.through[v].iter().filter(|&&l| self.available(l)).count();
            if best.is_none_or(|(_, bk)| k < bk) {
                best = Some((v, k));
                if k <= 1 {
                    break;
                }
            }
        }
        let Some((v, k)) = best else {
            return true;
        };
        if k == 0 {
            return false;
        }
        for i in 0..self.through[v].len() {
            let l = self.through[v][i];
            if !self.available(l) {
                continue;
            }
            for &u in &self.lines[l as usize] {
                self.covered[u as usize] = true;
            }
            self.chosen.push(l);
            if self.run() {
                return true;
            }
            self.chosen.pop();
            for &u in &self.lines[l as usize] {
                self.covered[u as usize] = false;
            }
            if self.timed_out {
                return false;
            }
        }
        false
    }
}

/// Exact cover of a color class by lines, most constrained vertex first.
///
/// Deterministic: vertices are scanned in rank order and lines through a
/// vertex in increasing direction.
pub fn line_partition_search(c: &Coloring, color: u8, timeout: Duration, budget: u64) -> Result<LineSearch> {
    let shape = c.shape();
    let (n, q) = (shape.n(), shape.q() as usize);
    let (members, index) = class_index(c, color, budget)?;
    if members.is_empty() || members.len() % q != 0 {
        return Ok(LineSearch::NotFound);
    }
    let pw = powers(n, q);
    let mut lines: Vec<Vec<u32>> = Vec::new();
    let mut dirs: Vec<usize> = Vec::new();
    let mut through = vec![Vec::new(); members.len()];
    let mut v = vec![0 as Symbol; n];
    for r in 0..index.len() {
        for (i, &p) in pw.iter().enumerate() {
            if v[i] != 0 {
                continue;
            }
            let pts: Vec<u32> = (0..q).map(|s| index[r + s * p]).collect();
            if pts.iter().all(|&x| x != NONE) {
                let id = lines.len() as u32;
                for &x in &pts {
                    through[x as usize].push(id);
                }
                lines.push(pts);
                dirs.push(i);
            }
        }
        increment(&mut v, q as u32);
    }
    for t in through.iter_mut() {
        t.sort_by_key(|&l| dirs[l as usize]);
    }
    let mut s = Search {
        lines,
        through,
        covered: vec![false; members.len()],
        chosen: Vec::new(),
        deadline: Instant::now() + timeout,
        timed_out: false,
    };
    if s.run() {
        let mut table = vec![Vec::new(); index.len()];
        for &l in &s.chosen {
            for &x in &s.lines[l as usize] {
                table[members[x as usize]] = vec![dirs[l as usize]];
            }
        }
        Ok(LineSearch::Found(FacePartition::from_table(shape, color, 1, table)))
    } else if s.timed_out {
        Ok(LineSearch::Timeout)
    } else {
        Ok(LineSearch::NotFound)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{hamming_perfect_coloring, tfold_perfect_coloring};
    use crate::hamming::GraphShape;

    const B: u64 = 1 << 22;

    #[test]
    fn edges_of_binary_hamming_complement() {
        let h = hamming_perfect_coloring(2, 2).unwrap().to_coloring();
        let fp = edge_partition_binary(&h, 2, B).unwrap();
        let rep = fp.validate(&h, B).unwrap();
        assert_eq!((rep.class_size, rep.faces), (6, 3));
        let big = hamming_perfect_coloring(3, 2).unwrap().to_coloring();
        let fp = edge_partition_binary(&big, 2, B).unwrap();
        assert_eq!(fp.validate(&big, B).unwrap().faces, 56);
    }

    #[test]
    fn independent_classes_are_rejected() {
        let h = hamming_perfect_coloring(2, 2).unwrap().to_coloring();
        assert!(matches!(edge_partition_binary(&h, 1, B), Err(Error::NoPartition(_))));
        let k2 = tfold_perfect_coloring(1, 1, 2).unwrap().to_coloring();
        assert!(matches!(edge_partition_binary(&k2, 1, B), Err(Error::NoPartition(_))));
        assert!(matches!(edge_partition_binary(&k2, 2, B), Err(Error::NoPartition(_))));
    }

    #[test]
    fn lines_of_ternary_hamming_complement() {
        let h = hamming_perfect_coloring(2, 3).unwrap().to_coloring();
        let LineSearch::Found(fp) = line_partition_search(&h, 2, Duration::from_secs(30), B).unwrap() else {
            panic!("no partition found");
        };
        let rep = fp.validate(&h, B).unwrap();
        assert_eq!((rep.class_size, rep.faces), (72, 24));
    }

    #[test]
    fn search_outcomes() {
        let s = GraphShape::new(2, 3).unwrap();
        let odd = Coloring::new(s, 2, |v| if v == [0, 0] || v == [1, 1] { 1 } else { 2 });
        assert!(matches!(
            line_partition_search(&odd, 1, Duration::from_secs(1), B).unwrap(),
            LineSearch::NotFound
        ));
        // Three vertices, no line among them.
        let diag = Coloring::new(s, 2, |v| if v[0] == v[1] { 1 } else { 2 });
        assert!(matches!(
            line_partition_search(&diag, 1, Duration::from_secs(1), B).unwrap(),
            LineSearch::NotFound
        ));
        let h = hamming_perfect_coloring(2, 2).unwrap().to_coloring();
        let LineSearch::Found(fp) = line_partition_search(&h, 2, Duration::from_secs(1), B).unwrap() else {
            panic!("binary complement splits into edges");
        };
        fp.validate(&h, B).unwrap();
    }

    #[test]
    fn expired_deadline_is_not_a_negative_answer() {
        let h = hamming_perfect_coloring(3, 3).unwrap().to_coloring();
        let r = line_partition_search(&h, 2, Duration::ZERO, B).unwrap();
        assert!(!matches!(r, LineSearch::NotFound));
    }
}
