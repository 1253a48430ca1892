//! Vertices, ranks, adjacency and faces of the Hamming graph H(n,q).

use std::fmt;
use std::ops::Deref;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A coordinate value in `0..q`.
pub type Symbol = u8;

/// Largest supported alphabet.
pub const MAX_Q: u32 = 256;

/// The pair (n, q) identifying H(n,q).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GraphShape {
    n: usize,
    q: u32,
}

/// A word of length n over `0..q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Vertex(Vec<Symbol>);

/// The set of vertices agreeing with `base` outside the `free` coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Face {
    pub base: Vertex,
    pub free: Vec<usize>,
}

impl Vertex {
    pub fn new(coords: Vec<Symbol>) -> Self {
        Vertex(coords)
    }

    pub fn zero(n: usize) -> Self {
        Vertex(vec![0; n])
    }

    pub fn coords(&self) -> &[Symbol] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<Symbol> {
        self.0
    }
}

impl Deref for Vertex {
    type Target = [Symbol];

    fn deref(&self) -> &[Symbol] {
        &self.0
    }
}

impl From<Vec<Symbol>> for Vertex {
    fn from(v: Vec<Symbol>) -> Self {
        Vertex(v)
    }
}

impl From<&[Symbol]> for Vertex {
    fn from(v: &[Symbol]) -> Self {
        Vertex(v.to_vec())
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, ")")
    }
}

impl Face {
    /// Builds a face, sorting the free coordinates.
    pub fn new(base: Vertex, mut free: Vec<usize>) -> Self {
        free.sort_unstable();
        Face { base, free }
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    /// The canonical base: the face member with zeros in the free coordinates.
    pub fn normalized(&self) -> Face {
        let mut base = self.base.clone();
        for &i in &self.free {
            base.0[i] = 0;
        }
        Face::new(base, self.free.clone())
    }
}

impl GraphShape {
    pub fn new(n: usize, q: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::param("dimension n must be positive"));
        }
        if !(2..=MAX_Q).contains(&q) {
            return Err(Error::param(format!("alphabet size q={q} must be in 2..={MAX_Q}")));
        }
        Ok(GraphShape { n, q })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// n(q-1).
    pub fn degree(&self) -> u64 {
        self.n as u64 * (self.q as u64 - 1)
    }

    /// θ_i = n(q-1) - qi.
    pub fn eigenvalue(&self, i: usize) -> i64 {
        self.degree() as i64 - self.q as i64 * i as i64
    }

    pub fn vertex_count(&self) -> BigUint {
        BigUint::from(self.q).pow(self.n as u32)
    }

    /// q^n when it fits in 128 bits.
    pub fn vertex_count_u128(&self) -> Option<u128> {
        (self.q as u128).checked_pow(self.n as u32)
    }

    /// q^n as a table length, if it does not exceed `budget`.
    pub fn vertex_count_within(&self, budget: u64) -> Option<usize> {
        self.vertex_count_u128()
            .filter(|&c| c <= budget as u128)
            .map(|c| c as usize)
    }

    pub(crate) fn budget_error(&self, budget: u64) -> Error {
        Error::BudgetExceeded {
            needed: format!("{}^{}", self.q, self.n),
            budget,
        }
    }

    /// Checks that `v` has length n and every symbol is below q.
    pub fn check(&self, v: &[Symbol]) -> Result<()> {
        if v.len() != self.n {
            return Err(Error::MalformedVertex(format!("length {} but n = {}", v.len(), self.n)));
        }
        if let Some((i, s)) = v.iter().enumerate().find(|(_, &s)| s as u32 >= self.q) {
            return Err(Error::MalformedVertex(format!(
                "symbol {s} at coordinate {i} is not below q = {}",
                self.q
            )));
        }
        Ok(())
    }

    pub fn zero(&self) -> Vertex {
        Vertex::zero(self.n)
    }

    /// Little-endian mixed-radix index: coordinate 0 is least significant.
    pub fn rank(&self, v: &[Symbol]) -> Result<u128> {
        self.check(v)?;
        if self.vertex_count_u128().is_none() {
            return Err(Error::Unsupported(format!(
                "ranks of H({},{}) exceed 128 bits",
                self.n, self.q
            )));
        }
        Ok(rank_unchecked(v, self.q))
    }

    pub fn unrank(&self, r: u128) -> Result<Vertex> {
        match self.vertex_count_u128() {
            Some(c) if r < c => {
                let mut v = vec![0; self.n];
                unrank_into(r, self.q, &mut v);
                Ok(Vertex(v))
            }
            Some(c) => Err(Error::param(format!("rank {r} is not below {c}"))),
            None => Err(Error::Unsupported(format!(
                "ranks of H({},{}) exceed 128 bits",
                self.n, self.q
            ))),
        }
    }

    /// All n(q-1) neighbors, coordinate-major then symbol ascending.
    pub fn neighbors(&self, v: &[Symbol]) -> Result<Vec<Vertex>> {
        self.check(v)?;
        let mut out = Vec::with_capacity(self.degree() as usize);
        for i in 0..self.n {
            for s in 0..self.q {
                let s = s as Symbol;
                if s != v[i] {
                    let mut u = v.to_vec();
                    u[i] = s;
                    out.push(Vertex(u));
                }
            }
        }
        Ok(out)
    }

    /// C(n,j)(q-1)^j, the number of vertices at distance j from a fixed vertex.
    pub fn sphere_size(&self, j: usize) -> Result<BigUint> {
        if j > self.n {
            return Err(Error::param(format!("distance {j} exceeds n = {}", self.n)));
        }
        Ok(binomial(self.n, j) * BigUint::from(self.q - 1).pow(j as u32))
    }

    /// The q^k members of `f` in rank order.
    pub fn enumerate_face(&self, f: &Face) -> Result<Vec<Vertex>> {
        self.check(&f.base)?;
        let mut seen = vec![false; self.n];
        for &i in &f.free {
            if i >= self.n {
                return Err(Error::InvalidFace(format!("free coordinate {i} out of range")));
            }
            if seen[i] {
                return Err(Error::InvalidFace(format!("free coordinate {i} repeated")));
            }
            seen[i] = true;
        }
        let mut free = f.free.clone();
        free.sort_unstable();
        let mut cur = f.base.0.clone();
        for &i in &free {
            cur[i] = 0;
        }
        let count = (self.q as usize).pow(free.len() as u32);
        let mut out = Vec::with_capacity(count);
        'outer: loop {
            out.push(Vertex(cur.clone()));
            for &i in &free {
                cur[i] += 1;
                if (cur[i] as u32) < self.q {
                    continue 'outer;
                }
                cur[i] = 0;
            }
            break;
        }
        Ok(out)
    }

    /// Iterates over all vertices in rank order.
    pub fn vertices(&self) -> VertexIter {
        VertexIter {
            q: self.q,
            cur: vec![0; self.n],
            done: false,
        }
    }
}

impl fmt::Display for GraphShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H({},{})", self.n, self.q)
    }
}

/// Number of differing coordinates.
pub fn distance(u: &[Symbol], v: &[Symbol]) -> Result<usize> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch(u.len(), v.len()));
    }
    Ok(u.iter().zip(v).filter(|(a, b)| a != b).count())
}

/// Hamming weight.
pub fn weight(v: &[Symbol]) -> usize {
    v.iter().filter(|&&s| s != 0).count()
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= BigUint::from(n - i);
        acc /= BigUint::from(i + 1);
    }
    acc
}

pub(crate) fn rank_unchecked(v: &[Symbol], q: u32) -> u128 {
    v.iter().rev().fold(0u128, |acc, &s| acc * q as u128 + s as u128)
}

pub(crate) fn rank_usize(v: &[Symbol], q: u32) -> usize {
    v.iter().rev().fold(0usize, |acc, &s| acc * q as usize + s as usize)
}

pub(crate) fn unrank_into(mut r: u128, q: u32, out: &mut [Symbol]) {
    for s in out.iter_mut() {
        *s = (r % q as u128) as Symbol;
        r /= q as u128;
    }
}

/// Advances `v` to the next vertex in rank order; returns false on wrap-around.
pub(crate) fn increment(v: &mut [Symbol], q: u32) -> bool {
    for s in v.iter_mut() {
        *s += 1;
        if (*s as u32) < q {
            return true;
        }
        *s = 0;
    }
    false
}

/// Iterator over the vertices of H(n,q) in rank order.
pub struct VertexIter {
    q: u32,
    cur: Vec<Symbol>,
    done: bool,
}

impl Iterator for VertexIter {
    type Item = Vertex;

    fn next(&mut self) -> Option<Vertex> {
        if self.done {
            return None;
        }
        let out = Vertex(self.cur.clone());
        self.done = !increment(&mut self.cur, self.q);
        Some(out)
    }
}
