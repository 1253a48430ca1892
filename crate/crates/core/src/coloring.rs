//! Colorings of H(n,q), quotient matrices and face-partition witnesses.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hamming::{increment, rank_usize, unrank_into, Face, GraphShape, Symbol, Vertex};
use crate::recipe::Recipe;
use crate::rng::SplitMix64;

/// Default materialization budget in vertices.
pub const DEFAULT_BUDGET: u64 = 1 << 24;

/// The materialization budget: `HPC_BUDGET` if set and valid, else 2^24.
pub fn default_budget() -> u64 {
    std::env::var("HPC_BUDGET")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

pub type ColorFn = Arc<dyn Fn(&[Symbol]) -> u8 + Send + Sync>;
pub type DirsFn = Arc<dyn Fn(&[Symbol]) -> Vec<usize> + Send + Sync>;

/// A partition of one color class into faces of a fixed dimension, given by
/// the free coordinates of the face through each class vertex.
#[derive(Clone)]
pub struct FacePartition {
    color: u8,
    dim: usize,
    dirs: DirsFn,
}

impl fmt::Debug for FacePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FacePartition")
            .field("color", &self.color)
            .field("dim", &self.dim)
            .finish()
    }
}

impl FacePartition {
    pub fn new(color: u8, dim: usize, dirs: impl Fn(&[Symbol]) -> Vec<usize> + Send + Sync + 'static) -> Self {
        FacePartition {
            color,
            dim,
            dirs: Arc::new(dirs),
        }
    }

    pub(crate) fn from_arc(color: u8, dim: usize, dirs: DirsFn) -> Self {
        FacePartition { color, dim, dirs }
    }

    /// A partition stored as free-coordinate lists indexed by rank.
    pub fn from_table(shape: GraphShape, color: u8, dim: usize, table: Vec<Vec<usize>>) -> Self {
        let q = shape.q();
        let table = Arc::new(table);
        FacePartition::new(color, dim, move |v| table[rank_usize(v, q)].clone())
    }

    pub fn color(&self) -> u8 {
        self.color
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub(crate) fn dirs_fn(&self) -> DirsFn {
        self.dirs.clone()
    }

    /// Free coordinates of the face containing `v`; `v` must lie in the class.
    pub fn free_dirs(&self, v: &[Symbol]) -> Vec<usize> {
        (self.dirs)(v)
    }

    pub fn face_of(&self, v: &[Symbol]) -> Face {
        Face::new(Vertex::from(v), self.free_dirs(v)).normalized()
    }

    pub fn with_color(&self, color: u8) -> Self {
        FacePartition {
            color,
            dim: self.dim,
            dirs: self.dirs.clone(),
        }
    }

    fn check_vertex(&self, c: &Coloring, v: &mut [Symbol]) -> std::result::Result<(), String> {
        let n = v.len();
        let q = c.shape().q();
        let mut free = self.free_dirs(v);
        free.sort_unstable();
        if free.len() != self.dim {
            return Err(format!(
                "face through {} has dimension {}",
                Vertex::from(&*v),
                free.len()
            ));
        }
        if free.windows(2).any(|w| w[0] == w[1]) || free.iter().any(|&i| i >= n) {
            return Err(format!("bad free coordinates {free:?} at {}", Vertex::from(&*v)));
        }
        let saved: Vec<Symbol> = free.iter().map(|&i| v[i]).collect();
        let mut local = vec![0 as Symbol; free.len()];
        let mut res = Ok(());
        loop {
            for (&i, &s) in free.iter().zip(&local) {
                v[i] = s;
            }
            if c.color_of(v) != self.color {
                res = Err(format!(
                    "face member {} is outside color {}",
                    Vertex::from(&*v),
                    self.color
                ));
                break;
            }
            let mut other = self.free_dirs(v);
            other.sort_unstable();
            if other != free {
                res = Err(format!(
                    "face member {} reports free set {other:?}, expected {free:?}",
                    Vertex::from(&*v)
                ));
                break;
            }
            if !increment(&mut local, q) {
                break;
            }
        }
        for (&i, s) in free.iter().zip(saved) {
            v[i] = s;
        }
        res
    }

    /// Checks every class vertex: its face has the claimed dimension, lies in
    /// the class, and every member reports the same face. Faces are then the
    /// classes of an equivalence relation, hence disjoint and covering.
    pub fn validate(&self, c: &Coloring, budget: u64) -> Result<FaceReport> {
        let shape = c.shape();
        let len = shape
            .vertex_count_within(budget)
            .ok_or_else(|| shape.budget_error(budget))?;
        let n = shape.n();
        let q = shape.q();
        let chunk = chunk_len(len);
        let results: Vec<(usize, Option<String>)> = (0..len.div_ceil(chunk))
            .into_par_iter()
            .map(|ci| {
                let start = ci * chunk;
                let end = (start + chunk).min(len);
                let mut v = vec![0 as Symbol; n];
                unrank_into(start as u128, q, &mut v);
                let mut members = 0;
                for _ in start..end {
                    if c.color_of(&v) == self.color {
                        members += 1;
                        if let Err(e) = self.check_vertex(c, &mut v) {
                            return (members, Some(e));
                        }
                    }
                    increment(&mut v, q);
                }
                (members, None)
            })
            .collect();
        let mut members = 0;
        for (m, err) in results {
            members += m;
            if let Some(e) = err {
                return Err(Error::NoPartition(e));
            }
        }
        let face_size = (q as usize).pow(self.dim as u32);
        Ok(FaceReport {
            exhaustive: true,
            class_size: members as u64,
            faces: (members / face_size) as u64,
        })
    }

    /// Checks the faces through `samples` random class vertices.
    pub fn validate_sampled(&self, c: &Coloring, samples: u64, seed: u64) -> Result<FaceReport> {
        let shape = c.shape();
        let mut rng = SplitMix64::new(seed);
        let mut v = vec![0 as Symbol; shape.n()];
        let mut hits = 0;
        let mut draws = 0u64;
        while hits < samples && draws < samples.saturating_mul(1000) {
            draws += 1;
            rng.fill_vertex(shape.q(), &mut v);
            if c.color_of(&v) != self.color {
                continue;
            }
            hits += 1;
            self.check_vertex(c, &mut v).map_err(Error::NoPartition)?;
        }
        Ok(FaceReport {
            exhaustive: false,
            class_size: hits,
            faces: 0,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceReport {
    pub exhaustive: bool,
    /// Class vertices examined.
    pub class_size: u64,
    /// Number of faces (exhaustive mode only).
    pub faces: u64,
}

pub(crate) fn chunk_len(len: usize) -> usize {
    (len / (rayon::current_num_threads() * 8).max(1)).clamp(1 << 10, 1 << 18)
}

/// An evaluable coloring of H(n,q) with colors 1..=k.
#[derive(Clone)]
pub struct Coloring {
    shape: GraphShape,
    k: u8,
    eval: ColorFn,
    recipe: Option<Recipe>,
    dense: Option<Arc<Vec<u8>>>,
    faces: Vec<FacePartition>,
}

impl fmt::Debug for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Coloring")
            .field("shape", &self.shape)
            .field("k", &self.k)
            .field("dense", &self.dense.is_some())
            .field("faces", &self.faces)
            .finish()
    }
}

impl Coloring {
    pub fn new(shape: GraphShape, k: u8, eval: impl Fn(&[Symbol]) -> u8 + Send + Sync + 'static) -> Self {
        Coloring {
            shape,
            k,
            eval: Arc::new(eval),
            recipe: None,
            dense: None,
            faces: Vec::new(),
        }
    }

    /// A coloring given by its table in rank order.
    pub fn from_dense(shape: GraphShape, k: u8, table: Vec<u8>) -> Result<Self> {
        let len = shape
            .vertex_count_u128()
            .filter(|&c| c <= usize::MAX as u128)
            .ok_or_else(|| shape.budget_error(u64::MAX))? as usize;
        if table.len() != len {
            return Err(Error::param(format!(
                "table has {} entries, {} needs {len}",
                table.len(),
                shape
            )));
        }
        if let Some(bad) = table.iter().position(|&c| c == 0 || c > k) {
            return Err(Error::param(format!(
                "color {} at rank {bad} is outside 1..={k}",
                table[bad]
            )));
        }
        let table = Arc::new(table);
        let t = table.clone();
        let q = shape.q();
        Ok(Coloring {
            shape,
            k,
            eval: Arc::new(move |v| t[rank_usize(v, q)]),
            recipe: None,
            dense: Some(table),
            faces: Vec::new(),
        })
    }

    pub fn shape(&self) -> GraphShape {
        self.shape
    }

    pub fn colors(&self) -> u8 {
        self.k
    }

    pub fn recipe(&self) -> Option<&Recipe> {
        self.recipe.as_ref()
    }

    pub fn with_recipe(mut self, recipe: Recipe) -> Self {
        self.recipe = Some(recipe);
        self
    }

    /// Attaches a face partition, replacing any earlier one for the same color.
    pub fn with_face_partition(mut self, fp: FacePartition) -> Self {
        self.faces.retain(|f| f.color != fp.color);
        self.faces.push(fp);
        self
    }

    pub fn face_partition(&self, color: u8) -> Option<&FacePartition> {
        self.faces.iter().find(|f| f.color == color)
    }

    pub fn face_partitions(&self) -> &[FacePartition] {
        &self.faces
    }

    pub fn without_face_partitions(mut self) -> Self {
        self.faces.clear();
        self
    }

    pub fn dense_table(&self) -> Option<&[u8]> {
        self.dense.as_deref().map(|v| &v[..])
    }

    /// Color of a vertex assumed to conform to the shape.
    #[inline]
    pub fn color_of(&self, v: &[Symbol]) -> u8 {
        match &self.dense {
            Some(t) => t[rank_usize(v, self.shape.q())],
            None => (self.eval)(v),
        }
    }

    pub fn evaluate(&self, v: &[Symbol]) -> Result<u8> {
        self.shape.check(v)?;
        Ok(self.color_of(v))
    }

    /// Fills the dense table; fails if q^n exceeds `budget`.
    pub fn materialize(&self, budget: u64) -> Result<Coloring> {
        if self.dense.is_some() {
            return Ok(self.clone());
        }
        let len = self
            .shape
            .vertex_count_within(budget)
            .ok_or_else(|| self.shape.budget_error(budget))?;
        let n = self.shape.n();
        let q = self.shape.q();
        let mut table = vec![0u8; len];
        let chunk = chunk_len(len);
        table.par_chunks_mut(chunk).enumerate().for_each(|(ci, out)| {
            let mut v = vec![0 as Symbol; n];
            unrank_into((ci * chunk) as u128, q, &mut v);
            for slot in out.iter_mut() {
                *slot = (self.eval)(&v);
                increment(&mut v, q);
            }
        });
        if let Some(bad) = table.iter().position(|&c| c == 0 || c > self.k) {
            return Err(Error::Internal(format!(
                "evaluator returned color {} at rank {bad}",
                table[bad]
            )));
        }
        Ok(Coloring {
            dense: Some(Arc::new(table)),
            ..self.clone()
        })
    }

    /// Swaps colors 1 and 2 of a 2-coloring, wrapping the recipe.
    pub fn complement(&self) -> Result<Coloring> {
        if self.k != 2 {
            return Err(Error::param("complement needs a 2-coloring"));
        }
        let inner = self.clone();
        let mut out = Coloring::new(self.shape, 2, move |v| 3 - inner.color_of(v));
        if let Some(t) = &self.dense {
            let swapped: Vec<u8> = t.iter().map(|&c| 3 - c).collect();
            out = Coloring::from_dense(self.shape, 2, swapped)?;
        }
        out.faces = self.faces.iter().map(|f| f.with_color(3 - f.color)).collect();
        out.recipe = self.recipe.clone().map(Recipe::complement);
        Ok(out)
    }
}

/// Permutes the colors of a 2-coloring so that b ≥ c; ties keep the order.
///
/// (b, c) comes from the recipe prediction when available, else from a scan.
pub fn swap_to_canonical(c: &Coloring, budget: u64) -> Result<Coloring> {
    if c.colors() != 2 {
        return Err(Error::param("canonical orientation needs a 2-coloring"));
    }
    let m = match c.recipe() {
        Some(r) => r.predict()?.matrix,
        None => crate::analysis::extract_quotient(c, budget)?,
    };
    let (b, cc) = m.bc().expect("2x2 matrix");
    if b < cc {
        c.complement()
    } else {
        Ok(c.clone())
    }
}

/// A square matrix of neighbor counts s_{i,j}, colors indexed from 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuotientMatrix {
    k: usize,
    entries: Vec<u64>,
}

impl QuotientMatrix {
    pub fn new(rows: Vec<Vec<u64>>) -> Result<Self> {
        let k = rows.len();
        if k == 0 {
            return Err(Error::param("empty quotient matrix"));
        }
        if rows.iter().any(|r| r.len() != k) {
            return Err(Error::param("quotient matrix is not square"));
        }
        Ok(QuotientMatrix {
            k,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub(crate) fn from_flat(k: usize, entries: Vec<u64>) -> Self {
        debug_assert_eq!(entries.len(), k * k);
        QuotientMatrix { k, entries }
    }

    /// [[degree-b, b], [c, degree-c]].
    pub fn two_color(degree: u64, b: u64, c: u64) -> Result<Self> {
        if b == 0 || c == 0 || b > degree || c > degree {
            return Err(Error::param(format!(
                "(b, c) = ({b}, {c}) is not valid for degree {degree}"
            )));
        }
        Ok(QuotientMatrix {
            k: 2,
            entries: vec![degree - b, b, c, degree - c],
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.k + j]
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.entries[i * self.k..(i + 1) * self.k]
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        (0..self.k).map(|i| self.row(i).to_vec()).collect()
    }

    /// The common row sum, if all rows agree.
    pub fn row_sum(&self) -> Option<u64> {
        let s: Vec<u64> = (0..self.k).map(|i| self.row(i).iter().sum()).collect();
        s.iter().all(|&x| x == s[0]).then_some(s[0])
    }

    pub fn check_row_sums(&self, degree: u64) -> Result<()> {
        match self.row_sum() {
            Some(d) if d == degree => Ok(()),
            _ => Err(Error::param(format!(
                "row sums of {self} differ from the degree {degree}"
            ))),
        }
    }

    /// (b, c) = (s_{1,2}, s_{2,1}) of a 2x2 matrix.
    pub fn bc(&self) -> Option<(u64, u64)> {
        (self.k == 2).then(|| (self.get(0, 1), self.get(1, 0)))
    }

    /// λ = a - c for a 2x2 matrix.
    pub fn main_eigenvalue(&self) -> Option<i64> {
        (self.k == 2).then(|| self.get(0, 0) as i64 - self.get(1, 0) as i64)
    }

    /// The matrix with colors i and j exchanged.
    pub fn swap_colors(&self, i: usize, j: usize) -> QuotientMatrix {
        let mut p: Vec<usize> = (0..self.k).collect();
        p.swap(i, j);
        let mut e = vec![0; self.k * self.k];
        for a in 0..self.k {
            for b in 0..self.k {
                e[a * self.k + b] = self.get(p[a], p[b]);
            }
        }
        QuotientMatrix::from_flat(self.k, e)
    }
}

impl fmt::Display for QuotientMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.k {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}
