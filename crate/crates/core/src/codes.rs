//! Perfect and MDS codes as 2-colorings, and the H(q,q) decomposition used by
//! the first splitting construction.

use std::fmt;
use std::sync::Arc;

use crate::algebra::field::{gf_of_order, prime_power, FiniteField};
use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::hamming::{increment, rank_usize, unrank_into, GraphShape, Symbol, Vertex};
use crate::rng::SplitMix64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CodeKind {
    /// Exactly one codeword in every radius-1 ball.
    Perfect { r: u32 },
    /// Exactly t codewords in every radius-1 ball.
    TfoldPerfect { t: u32, r: u32 },
    /// Exactly one codeword on every line.
    Mds2,
    /// Exactly t codewords on every line.
    TfoldMds { t: u32 },
    /// Exactly one codeword in every 2-face.
    Mds3,
}

pub type Membership = Arc<dyn Fn(&[Symbol]) -> bool + Send + Sync>;

/// A code together with the property it is claimed to have.
#[derive(Clone)]
pub struct CodeColoring {
    shape: GraphShape,
    kind: CodeKind,
    membership: Membership,
}

impl fmt::Debug for CodeColoring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CodeColoring")
            .field("shape", &self.shape)
            .field("kind", &self.kind)
            .finish()
    }
}

impl CodeColoring {
    pub fn from_predicate(
        shape: GraphShape,
        kind: CodeKind,
        membership: impl Fn(&[Symbol]) -> bool + Send + Sync + 'static,
    ) -> Self {
        CodeColoring {
            shape,
            kind,
            membership: Arc::new(membership),
        }
    }

    pub fn shape(&self) -> GraphShape {
        self.shape
    }

    pub fn kind(&self) -> CodeKind {
        self.kind
    }

    pub fn contains(&self, v: &[Symbol]) -> bool {
        (self.membership)(v)
    }

    /// The 2-coloring with the code as color 1.
    pub fn to_coloring(&self) -> Coloring {
        let m = self.membership.clone();
        Coloring::new(self.shape, 2, move |v| if m(v) { 1 } else { 2 })
    }

    /// The (b, c) parameters implied by the kind.
    pub fn parameters(&self) -> (u64, u64) {
        let n = self.shape.n() as u64;
        let q = self.shape.q() as u64;
        match self.kind {
            CodeKind::Perfect { .. } => (n * (q - 1), 1),
            CodeKind::TfoldPerfect { t, .. } => (n * (q - 1) - t as u64 + 1, t as u64),
            CodeKind::Mds2 => (n * (q - 1), n),
            CodeKind::TfoldMds { t } => (n * (q - t as u64), n * t as u64),
            CodeKind::Mds3 => (n * (q - 1), 1),
        }
    }
}

/// A linear Hamming code over GF(q) with redundancy r.
///
/// Parity-check columns are the nonzero vectors of GF(q)^r whose first nonzero
/// entry is 1, in lexicographic order. Symbols are field labels.
#[derive(Clone, Debug)]
pub struct HammingCode {
    field: FiniteField,
    r: u32,
    columns: Vec<Vec<u32>>,
}

impl HammingCode {
    pub fn new(r: u32, q: u32) -> Result<Self> {
        if r == 0 {
            return Err(Error::param("redundancy r must be positive"));
        }
        let field = gf_of_order(q as u64)?;
        let total = (q as u64)
            .checked_pow(r)
            .filter(|&t| t <= 1 << 24)
            .ok_or_else(|| Error::Unsupported(format!("Hamming code with q={q}, r={r} is too large")))?;
        let mut columns = Vec::new();
        for x in 1..total {
            // Most significant digit first gives lexicographic order.
            let mut h = vec![0u32; r as usize];
            let mut y = x;
            for i in (0..r as usize).rev() {
                h[i] = (y % q as u64) as u32;
                y /= q as u64;
            }
            if h.iter().find(|&&e| e != 0) == Some(&1) {
                columns.push(h);
            }
        }
        Ok(HammingCode { field, r, columns })
    }

    pub fn length(&self) -> usize {
        self.columns.len()
    }

    pub fn redundancy(&self) -> u32 {
        self.r
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn columns(&self) -> &[Vec<u32>] {
        &self.columns
    }

    /// H·x as a vector over GF(q).
    pub fn syndrome(&self, x: &[Symbol]) -> Vec<u32> {
        let mut s = vec![0u32; self.r as usize];
        for (col, &xi) in self.columns.iter().zip(x) {
            if xi == 0 {
                continue;
            }
            for (acc, &h) in s.iter_mut().zip(col) {
                *acc = self.field.add(*acc, self.field.mul(h, xi as u32));
            }
        }
        s
    }

    /// The syndrome packed as an integer in `0..q^r`.
    pub fn syndrome_index(&self, x: &[Symbol]) -> usize {
        let q = self.field.order() as usize;
        self.syndrome(x).iter().rev().fold(0, |acc, &d| acc * q + d as usize)
    }
}

/// The linear 1-perfect code of H((q^r-1)/(q-1), q) as an (n(q-1),1)-coloring.
pub fn hamming_perfect_coloring(r: u32, q: u32) -> Result<CodeColoring> {
    tfold_perfect_coloring(1, r, q)
}

/// A union of t cosets of the Hamming code: an (n(q-1)-t+1, t)-coloring.
///
/// The cosets are those of the first t vertices in rank order that have
/// pairwise distinct syndromes.
pub fn tfold_perfect_coloring(t: u32, r: u32, q: u32) -> Result<CodeColoring> {
    let kind = if t == 1 {
        CodeKind::Perfect { r }
    } else {
        CodeKind::TfoldPerfect { t, r }
    };
    if r == 1 && prime_power(q as u64).is_none() {
        // H(1,q) is complete, so any t vertices form a t-fold perfect code.
        let shape = GraphShape::new(1, q)?;
        if t == 0 || t >= q {
            return Err(Error::param(format!("t = {t} must be in 1..{q} for r = 1")));
        }
        return Ok(CodeColoring::from_predicate(shape, kind, move |x| (x[0] as u32) < t));
    }
    let code = HammingCode::new(r, q)?;
    let cosets = (q as u64).pow(r);
    if t == 0 || t as u64 >= cosets {
        return Err(Error::param(format!(
            "t = {t} must be in 1..{cosets} for r = {r}, q = {q}"
        )));
    }
    let shape = GraphShape::new(code.length(), q)?;
    let mut chosen = vec![false; cosets as usize];
    let mut found = 0;
    let mut v = vec![0 as Symbol; shape.n()];
    while found < t {
        let s = code.syndrome_index(&v);
        if !chosen[s] {
            chosen[s] = true;
            found += 1;
        }
        if !increment(&mut v, q) {
            break;
        }
    }
    let code = Arc::new(code);
    Ok(CodeColoring::from_predicate(shape, kind, move |x| {
        chosen[code.syndrome_index(x)]
    }))
}

/// The t-fold MDS code {x : Σx mod q < t}: an (n(q-t), nt)-coloring.
pub fn mds2_coloring(n: usize, q: u32, t: u32) -> Result<CodeColoring> {
    if t == 0 || t >= q {
        return Err(Error::param(format!("t = {t} must be in 1..{q}")));
    }
    let shape = GraphShape::new(n, q)?;
    let kind = if t == 1 {
        CodeKind::Mds2
    } else {
        CodeKind::TfoldMds { t }
    };
    Ok(CodeColoring::from_predicate(shape, kind, move |x| {
        x.iter().map(|&s| s as u32).sum::<u32>() % q < t
    }))
}

/// The Hamming code of H(q+1,q) viewed as a distance-3 MDS code.
pub fn mds3_coloring(q: u32) -> Result<CodeColoring> {
    let c = hamming_perfect_coloring(2, q)?;
    Ok(CodeColoring {
        kind: CodeKind::Mds3,
        ..c
    })
}

/// A partition of H(m,q) into q distance-2 MDS codes, optionally refined into
/// distance-3 MDS codes.
#[derive(Clone)]
pub struct MdsPartition {
    m: usize,
    q: u32,
    block: Vec<Symbol>,
    refine: Option<Vec<Symbol>>,
}

impl fmt::Debug for MdsPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MdsPartition")
            .field("m", &self.m)
            .field("q", &self.q)
            .field("refined", &self.refine.is_some())
            .finish()
    }
}

impl MdsPartition {
    /// Builds a partition from per-rank block and refinement indices.
    pub fn from_tables(m: usize, q: u32, block: Vec<Symbol>, refine: Option<Vec<Symbol>>) -> Result<Self> {
        let len = (q as usize).pow(m as u32);
        if block.len() != len || refine.as_ref().is_some_and(|r| r.len() != len) {
            return Err(Error::InvalidPartition("table length differs from q^m".into()));
        }
        Ok(MdsPartition { m, q, block, refine })
    }

    /// M^i = {x : Σx ≡ i mod q}, without refinement.
    pub fn zero_sum(m: usize, q: u32) -> Result<Self> {
        let shape = GraphShape::new(m, q)?;
        let len = shape
            .vertex_count_within(1 << 24)
            .ok_or_else(|| shape.budget_error(1 << 24))?;
        let mut block = Vec::with_capacity(len);
        let mut v = vec![0 as Symbol; m];
        loop {
            block.push((v.iter().map(|&s| s as u32).sum::<u32>() % q) as Symbol);
            if !increment(&mut v, q) {
                break;
            }
        }
        Ok(MdsPartition {
            m,
            q,
            block,
            refine: None,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Block index of every vertex, in rank order.
    pub fn block_table(&self) -> &[Symbol] {
        &self.block
    }

    pub fn refine_table(&self) -> Option<&[Symbol]> {
        self.refine.as_deref()
    }

    pub fn block_of(&self, v: &[Symbol]) -> Symbol {
        self.block[rank_usize(v, self.q)]
    }

    /// Index j of the distance-3 code L^i_j containing `v`.
    pub fn refinement_of(&self, v: &[Symbol]) -> Option<Symbol> {
        self.refine.as_ref().map(|r| r[rank_usize(v, self.q)])
    }

    /// Every line meets every block exactly once.
    pub fn validate_blocks(&self) -> Result<()> {
        let q = self.q as usize;
        if self.block.iter().any(|&b| b as usize >= q) {
            return Err(Error::InvalidPartition("block index out of range".into()));
        }
        let mut v = vec![0 as Symbol; self.m];
        let mut seen = vec![false; q];
        let mut r = 0usize;
        loop {
            let mut stride = 1usize;
            for (i, &s) in v.iter().enumerate() {
                if s == 0 {
                    seen.iter_mut().for_each(|x| *x = false);
                    for a in 0..q {
                        let b = self.block[r + a * stride] as usize;
                        if seen[b] {
                            return Err(Error::InvalidPartition(format!(
                                "line through {} in direction {i} meets block {b} twice",
                                Vertex::from(&v[..])
                            )));
                        }
                        seen[b] = true;
                    }
                }
                stride *= q;
            }
            r += 1;
            if !increment(&mut v, self.q) {
                break;
            }
        }
        Ok(())
    }

    /// Block invariants plus: each refinement class has minimum distance ≥ 3
    /// and the q classes inside a block have equal size.
    pub fn validate(&self) -> Result<()> {
        self.validate_blocks()?;
        let Some(refine) = &self.refine else {
            return Ok(());
        };
        let q = self.q as usize;
        let mut classes: Vec<Vec<usize>> = vec![Vec::new(); q * q];
        for (r, (&b, &j)) in self.block.iter().zip(refine).enumerate() {
            if j as usize >= q {
                return Err(Error::InvalidPartition("refinement index out of range".into()));
            }
            classes[b as usize * q + j as usize].push(r);
        }
        let size = classes[0].len();
        let mut u = vec![0 as Symbol; self.m];
        let mut w = vec![0 as Symbol; self.m];
        for (idx, class) in classes.iter().enumerate() {
            if class.len() != size {
                return Err(Error::InvalidPartition(format!(
                    "refinement class {idx} has {} vertices, expected {size}",
                    class.len()
                )));
            }
            for (a, &x) in class.iter().enumerate() {
                unrank_into(x as u128, self.q, &mut u);
                for &y in &class[a + 1..] {
                    unrank_into(y as u128, self.q, &mut w);
                    let d = u.iter().zip(&w).filter(|(s, t)| s != t).count();
                    if d < 3 {
                        return Err(Error::InvalidPartition(format!(
                            "class L^{}_{} has words at distance {d}",
                            idx / q,
                            idx % q
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Splits H(q,q) into M^i = M + (i,0,…,0), where M is the projection of the
/// Hamming code of H(q+1,q) onto its first q coordinates, and refines each M^i
/// by the value of the dropped coordinate.
pub fn hqq_decomposition(q: u32) -> Result<MdsPartition> {
    let code = HammingCode::new(2, q)?;
    let shape = GraphShape::new(q as usize, q)?;
    let len = shape
        .vertex_count_within(1 << 24)
        .ok_or_else(|| Error::Unsupported(format!("H({q},{q}) decomposition is too large")))?;
    let f = code.field();
    let first = &code.columns()[0];
    let last = &code.columns()[q as usize];
    let mut block = vec![0 as Symbol; len];
    let mut refine = vec![0 as Symbol; len];
    let mut x = vec![0 as Symbol; q as usize + 1];
    for r in 0..len {
        unrank_into(r as u128, q, &mut x[..q as usize]);
        x[q as usize] = 0;
        let s = code.syndrome(&x);
        // Find (i, j) with s - i·h_first + j·h_last = 0.
        let mut hit = None;
        'search: for i in 0..q {
            for j in 0..q {
                let ok = (0..2).all(|e| {
                    let v = f.add(f.sub(s[e], f.mul(i, first[e])), f.mul(j, last[e]));
                    v == 0
                });
                if ok {
                    hit = Some((i, j));
                    break 'search;
                }
            }
        }
        let (i, j) = hit.ok_or_else(|| Error::Internal("parity columns are dependent".into()))?;
        block[r] = i as Symbol;
        refine[r] = j as Symbol;
    }
    Ok(MdsPartition {
        m: q as usize,
        q,
        block,
        refine: Some(refine),
    })
}

/// A place where a code fails its defining property.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeViolation {
    /// Center of the ball, or base of the face.
    pub vertex: Vertex,
    /// Free coordinates of the face (empty for balls).
    pub free: Vec<usize>,
    pub found: u64,
    pub expected: u64,
}

#[derive(Clone, Debug)]
pub struct CodeReport {
    pub exhaustive: bool,
    pub checked: u64,
    pub violation: Option<CodeViolation>,
}

impl CodeReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

fn count_in_ball(code: &CodeColoring, v: &mut [Symbol]) -> u64 {
    let q = code.shape.q();
    let mut count = code.contains(v) as u64;
    for i in 0..v.len() {
        let keep = v[i];
        for s in 0..q as Symbol {
            if s != keep {
                v[i] = s;
                count += code.contains(v) as u64;
            }
        }
        v[i] = keep;
    }
    count
}

fn count_in_face(code: &CodeColoring, v: &mut [Symbol], free: &[usize]) -> u64 {
    let q = code.shape.q();
    let saved: Vec<Symbol> = free.iter().map(|&i| v[i]).collect();
    for &i in free {
        v[i] = 0;
    }
    let mut count = 0;
    'outer: loop {
        count += code.contains(v) as u64;
        for &i in free {
            v[i] += 1;
            if (v[i] as u32) < q {
                continue 'outer;
            }
            v[i] = 0;
        }
        break;
    }
    for (&i, s) in free.iter().zip(saved) {
        v[i] = s;
    }
    count
}

/// Checks the counting property of `code.kind()`: exhaustively when
/// q^n ≤ budget, otherwise at `samples` random places drawn from `seed`.
pub fn verify_code(code: &CodeColoring, budget: u64, samples: u64, seed: u64) -> CodeReport {
    let shape = code.shape;
    let n = shape.n();
    let q = shape.q();
    let (face_dim, expected) = match code.kind {
        CodeKind::Perfect { .. } => (None, 1),
        CodeKind::TfoldPerfect { t, .. } => (None, t as u64),
        CodeKind::Mds2 => (Some(1), 1),
        CodeKind::TfoldMds { t } => (Some(1), t as u64),
        CodeKind::Mds3 => (Some(2), 1),
    };
    let check = |v: &mut Vec<Symbol>, free: &[usize]| -> Option<CodeViolation> {
        let found = match face_dim {
            None => count_in_ball(code, v),
            Some(_) => count_in_face(code, v, free),
        };
        (found != expected).then(|| CodeViolation {
            vertex: Vertex::from(&v[..]),
            free: free.to_vec(),
            found,
            expected,
        })
    };
    let faces: Vec<Vec<usize>> = match face_dim {
        None => vec![vec![]],
        Some(1) => (0..n).map(|i| vec![i]).collect(),
        Some(_) => (0..n).flat_map(|i| (i + 1..n).map(move |j| vec![i, j])).collect(),
    };
    let mut checked = 0;
    if shape.vertex_count_within(budget).is_some() {
        let mut v = vec![0 as Symbol; n];
        loop {
            for free in &faces {
                if free.iter().all(|&i| v[i] == 0) {
                    checked += 1;
                    if let Some(bad) = check(&mut v, free) {
                        return CodeReport {
                            exhaustive: true,
                            checked,
                            violation: Some(bad),
                        };
                    }
                }
            }
            if !increment(&mut v, q) {
                break;
            }
        }
        CodeReport {
            exhaustive: true,
            checked,
            violation: None,
        }
    } else {
        let mut rng = SplitMix64::new(seed);
        let mut v = vec![0 as Symbol; n];
        for _ in 0..samples {
            rng.fill_vertex(q, &mut v);
            let free = &faces[rng.below(faces.len() as u64) as usize];
            checked += 1;
            if let Some(bad) = check(&mut v, free) {
                return CodeReport {
                    exhaustive: false,
                    checked,
                    violation: Some(bad),
                };
            }
        }
        CodeReport {
            exhaustive: false,
            checked,
            violation: None,
        }
    }
}
