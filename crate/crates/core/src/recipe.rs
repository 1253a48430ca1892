//! Construction trees and their symbolic parameters.
//!
//! A [`Recipe`] describes how a coloring is assembled from codes by the
//! covering, invasion and splitting constructions. [`Recipe::predict`]
//! computes the resulting graph, quotient matrix and face-partition dimensions
//! without building anything; [`crate::constructions::build`] produces the
//! coloring itself.

use std::fmt;

use crate::algebra::field::prime_power;
use crate::coloring::QuotientMatrix;
use crate::error::{Error, Result};
use crate::hamming::{GraphShape, MAX_Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FaceVariant {
    /// Special directions contribute their block index: diagonal a-k(q-1).
    Prime,
    /// Special directions are ignored: diagonal a+k(q-1)^2.
    DoublePrime,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InvasionMode {
    /// Over a (q+1)-coloring: colors 1..q get G^i_t, color q+1 gets solid `l`.
    Faces { t: u32, l: u8 },
    /// Over a 2q-coloring: colors 1..q get G^i_{t1}, colors q+1..2q get G^i_{t2}.
    Split { t1: u32, t2: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Recipe {
    /// {x : Σx mod q < t} in H(n,q).
    Mds2 { n: usize, q: u32, t: u32 },
    /// t cosets of the Hamming code with redundancy r.
    Perfect { r: u32, q: u32, t: u32 },
    /// Colors 1 and 2 exchanged.
    Complement(Box<Recipe>),
    /// t dummy coordinates appended.
    Extend { t: usize, inner: Box<Recipe> },
    /// Blocks of t coordinates replaced by their sum mod q.
    MultLength { t: usize, inner: Box<Recipe> },
    /// Alphabet q·p reduced mod q.
    MultAlphabet { p: u32, inner: Box<Recipe> },
    /// A line partition of one color class found by search.
    Lines { color: u8, inner: Box<Recipe> },
    /// The 2q-coloring q(f(X_y)-1) + R(J_y) + 1 of H(qn,q).
    SplitIBase { seed: u64, inner: Box<Recipe> },
    /// The (q+1)-colorings g' and g'' of H(qn,q) built from a k-face partition of color 1.
    SplitIFaces {
        variant: FaceVariant,
        k: usize,
        seed: u64,
        inner: Box<Recipe>,
    },
    /// Invasion by the G^i_t colorings.
    Invasion { mode: InvasionMode, inner: Box<Recipe> },
    /// (q(b+c)-(c t1 + b t2), c t1 + b t2) on H(qn-λ, q); needs λ ≤ 0.
    FlaassStd { t1: u32, t2: u32, inner: Box<Recipe> },
    /// (q(b+c)-tc, tc) from a k-face partition of color 1, variant 1 or 2.
    FlaassImpr {
        variant: u8,
        t: u32,
        k: usize,
        inner: Box<Recipe>,
    },
    /// Repeated variant-2 steps with multipliers `ts`.
    FlaassIter { ts: Vec<u32>, k: usize, inner: Box<Recipe> },
    /// ((q²-1)(p-t), (q²-1)t+p) on H(q+1, pq).
    Split2 { q: u32, p: u32, t: u32 },
}

/// Graph, quotient matrix and face-partition dimensions of a recipe's output.
///
/// `face_dims[i]` is the dimension of the faces partitioning color i+1;
/// 0 means only the trivial partition into vertices is known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prediction {
    pub shape: GraphShape,
    pub matrix: QuotientMatrix,
    pub face_dims: Vec<usize>,
}

impl Prediction {
    pub fn colors(&self) -> usize {
        self.matrix.k()
    }

    /// (b, c) of a 2-coloring.
    pub fn bc(&self) -> Option<(u64, u64)> {
        self.matrix.bc()
    }

    pub fn eigenvalue(&self) -> Option<i64> {
        self.matrix.main_eigenvalue()
    }
}

fn two(shape: GraphShape, b: u64, c: u64, face_dims: Vec<usize>) -> Result<Prediction> {
    Ok(Prediction {
        matrix: QuotientMatrix::two_color(shape.degree(), b, c)?,
        shape,
        face_dims,
    })
}

/// Whether the Hamming code of H(q+1,q) exists here (q a prime power).
pub fn has_perfect_code_qplus1(q: u32) -> bool {
    prime_power(q as u64).is_some()
}

impl Recipe {
    pub fn name(&self) -> &'static str {
        match self {
            Recipe::Mds2 { .. } => "mds2",
            Recipe::Perfect { .. } => "perfect",
            Recipe::Complement(_) => "complement",
            Recipe::Extend { .. } => "extend",
            Recipe::MultLength { .. } => "mult-length",
            Recipe::MultAlphabet { .. } => "mult-alphabet",
            Recipe::Lines { .. } => "lines",
            Recipe::SplitIBase { .. } => "split1-base",
            Recipe::SplitIFaces { .. } => "split1-faces",
            Recipe::Invasion { .. } => "invasion",
            Recipe::FlaassStd { .. } => "flaass-std",
            Recipe::FlaassImpr { .. } => "flaass-impr",
            Recipe::FlaassIter { .. } => "flaass-iter",
            Recipe::Split2 { .. } => "split2",
        }
    }

    pub fn inner(&self) -> Option<&Recipe> {
        match self {
            Recipe::Mds2 { .. } | Recipe::Perfect { .. } | Recipe::Split2 { .. } => None,
            Recipe::Complement(inner)
            | Recipe::Extend { inner, .. }
            | Recipe::MultLength { inner, .. }
            | Recipe::MultAlphabet { inner, .. }
            | Recipe::Lines { inner, .. }
            | Recipe::SplitIBase { inner, .. }
            | Recipe::SplitIFaces { inner, .. }
            | Recipe::Invasion { inner, .. }
            | Recipe::FlaassStd { inner, .. }
            | Recipe::FlaassImpr { inner, .. }
            | Recipe::FlaassIter { inner, .. } => Some(inner),
        }
    }

    /// Wraps in a complement node, or removes one if already wrapped.
    pub fn complement(self) -> Recipe {
        match self {
            Recipe::Complement(inner) => *inner,
            other => Recipe::Complement(Box::new(other)),
        }
    }

    /// Number of construction layers; complements and line searches are free.
    pub fn depth(&self) -> usize {
        match self {
            Recipe::Mds2 { .. } | Recipe::Perfect { .. } | Recipe::Split2 { .. } => 0,
            Recipe::Complement(inner) | Recipe::Lines { inner, .. } => inner.depth(),
            Recipe::FlaassIter { ts, inner, .. } => inner.depth() + ts.len(),
            other => other.inner().map_or(0, |i| i.depth() + 1),
        }
    }

    /// Symbolic output parameters; errors name the offending node.
    pub fn predict(&self) -> Result<Prediction> {
        self.predict_at("")
    }

    fn predict_at(&self, parent: &str) -> Result<Prediction> {
        let path = if parent.is_empty() {
            self.name().to_string()
        } else {
            format!("{parent}/{}", self.name())
        };
        let inner = match self.inner() {
            Some(r) => Some(r.predict_at(&path)?),
            None => None,
        };
        self.step(inner, &path)
    }

    fn step(&self, inner: Option<Prediction>, path: &str) -> Result<Prediction> {
        let bad = |reason: String| Error::recipe(path, reason);
        let shape = |n: usize, q: u32| GraphShape::new(n, q).map_err(|e| bad(e.to_string()));
        let need_two = |p: &Prediction| -> Result<(u64, u64)> {
            p.bc()
                .ok_or_else(|| bad(format!("needs a 2-coloring, got {} colors", p.colors())))
        };
        match self {
            Recipe::Mds2 { n, q, t } => {
                let s = shape(*n, *q)?;
                if *t == 0 || *t >= *q {
                    return Err(bad(format!("t = {t} must be in 1..{q}")));
                }
                two(s, *n as u64 * (*q - *t) as u64, *n as u64 * *t as u64, vec![0, 0])
            }
            Recipe::Perfect { r, q, t } => {
                if *r == 0 {
                    return Err(bad("r must be positive".into()));
                }
                if *r >= 2 && prime_power(*q as u64).is_none() {
                    return Err(bad(format!("no Hamming code for q = {q}: not a prime power")));
                }
                let cosets = (*q as u64)
                    .checked_pow(*r)
                    .filter(|&c| c <= 1 << 24)
                    .ok_or_else(|| bad("code too large".into()))?;
                if *t == 0 || *t as u64 >= cosets {
                    return Err(bad(format!("t = {t} must be in 1..{cosets}")));
                }
                let n = ((cosets - 1) / (*q as u64 - 1)) as usize;
                let s = shape(n, *q)?;
                two(s, s.degree() - *t as u64 + 1, *t as u64, vec![0, 0])
            }
            Recipe::Complement(_) => {
                let p = inner.unwrap();
                need_two(&p)?;
                Ok(Prediction {
                    shape: p.shape,
                    matrix: p.matrix.swap_colors(0, 1),
                    face_dims: vec![p.face_dims[1], p.face_dims[0]],
                })
            }
            Recipe::Extend { t, .. } => {
                let p = inner.unwrap();
                if *t == 0 {
                    return Err(bad("t must be positive".into()));
                }
                let q = p.shape.q();
                let s = shape(p.shape.n() + t, q)?;
                let k = p.colors();
                let mut e = Vec::with_capacity(k * k);
                for i in 0..k {
                    for j in 0..k {
                        let d = if i == j { *t as u64 * (q as u64 - 1) } else { 0 };
                        e.push(p.matrix.get(i, j) + d);
                    }
                }
                Ok(Prediction {
                    shape: s,
                    matrix: QuotientMatrix::from_flat(k, e),
                    face_dims: p.face_dims.iter().map(|d| d + t).collect(),
                })
            }
            Recipe::MultLength { t, .. } => {
                let p = inner.unwrap();
                if *t == 0 {
                    return Err(bad("t must be positive".into()));
                }
                let s = shape(p.shape.n() * t, p.shape.q())?;
                let k = p.colors();
                let e = (0..k * k).map(|x| p.matrix.get(x / k, x % k) * *t as u64).collect();
                Ok(Prediction {
                    shape: s,
                    matrix: QuotientMatrix::from_flat(k, e),
                    face_dims: p.face_dims.iter().map(|d| d * t).collect(),
                })
            }
            Recipe::MultAlphabet { p: mult, .. } => {
                let p = inner.unwrap();
                if *mult == 0 {
                    return Err(bad("p must be positive".into()));
                }
                let q = p.shape.q() * mult;
                if q > MAX_Q {
                    return Err(bad(format!("alphabet {q} exceeds {MAX_Q}")));
                }
                let s = shape(p.shape.n(), q)?;
                let k = p.colors();
                let extra = p.shape.n() as u64 * (*mult as u64 - 1);
                let e = (0..k * k)
                    .map(|x| {
                        let (i, j) = (x / k, x % k);
                        p.matrix.get(i, j) * *mult as u64 + if i == j { extra } else { 0 }
                    })
                    .collect();
                Ok(Prediction {
                    shape: s,
                    matrix: QuotientMatrix::from_flat(k, e),
                    face_dims: p.face_dims.clone(),
                })
            }
            Recipe::Lines { color, .. } => {
                let mut p = inner.unwrap();
                let c = *color as usize;
                if c == 0 || c > p.colors() {
                    return Err(bad(format!("color {color} out of range")));
                }
                if p.matrix.get(c - 1, c - 1) == 0 {
                    return Err(bad(format!("color {color} is an independent set")));
                }
                if p.face_dims[c - 1] == 0 {
                    p.face_dims[c - 1] = 1;
                }
                Ok(p)
            }
            Recipe::SplitIBase { .. } => {
                let p = inner.unwrap();
                let (b, c) = need_two(&p)?;
                let q = p.shape.q();
                if !has_perfect_code_qplus1(q) {
                    return Err(bad(format!("no 1-perfect code in H({},{q})", q + 1)));
                }
                let s = shape(p.shape.n() * q as usize, q)?;
                let a = p.matrix.get(0, 0);
                let d = p.matrix.get(1, 1);
                let qq = q as usize;
                let k = 2 * qq;
                let mut e = vec![0; k * k];
                for i in 0..k {
                    for j in 0..k {
                        e[i * k + j] = match (i < qq, j < qq) {
                            (true, true) => a,
                            (true, false) => b,
                            (false, true) => c,
                            (false, false) => d,
                        };
                    }
                }
                Ok(Prediction {
                    shape: s,
                    matrix: QuotientMatrix::from_flat(k, e),
                    face_dims: vec![0; k],
                })
            }
            Recipe::SplitIFaces { variant, k, .. } => {
                let p = inner.unwrap();
                let (b, c) = need_two(&p)?;
                let q = p.shape.q();
                if !has_perfect_code_qplus1(q) {
                    return Err(bad(format!("no 1-perfect code in H({},{q})", q + 1)));
                }
                if p.face_dims[0] < *k {
                    return Err(bad(format!(
                        "color 1 is known to split into {}-faces, not {k}-faces",
                        p.face_dims[0]
                    )));
                }
                if *variant == FaceVariant::DoublePrime && *k >= p.shape.n() {
                    return Err(bad("k must be below n".into()));
                }
                let s = shape(p.shape.n() * q as usize, q)?;
                let (diag, off) = face_split_entries(p.matrix.get(0, 0), *k as u64, q as u64, *variant)
                    .ok_or_else(|| bad("a < k(q-1)".into()))?;
                let d = p.matrix.get(1, 1);
                let qq = q as usize;
                let kk = qq + 1;
                let mut e = vec![0; kk * kk];
                for i in 0..kk {
                    for j in 0..kk {
                        e[i * kk + j] = match (i < qq, j < qq) {
                            (true, true) if i == j => diag,
                            (true, true) => off,
                            (true, false) => q as u64 * b,
                            (false, true) => c,
                            (false, false) => q as u64 * d,
                        };
                    }
                }
                Ok(Prediction {
                    shape: s,
                    matrix: QuotientMatrix::from_flat(kk, e),
                    face_dims: vec![0; kk],
                })
            }
            Recipe::Invasion { mode, inner: child } => {
                let p = inner.unwrap();
                let q = p.shape.q();
                let qq = q as usize;
                let m = &p.matrix;
                match *mode {
                    InvasionMode::Split { t1, t2 } => {
                        if p.colors() != 2 * qq {
                            return Err(bad(format!("needs a {}-coloring", 2 * qq)));
                        }
                        let (alpha, beta, gamma, delta) = (m.get(0, 0), m.get(0, qq), m.get(qq, 0), m.get(qq, qq));
                        for i in 0..2 * qq {
                            for j in 0..2 * qq {
                                let want = match (i < qq, j < qq) {
                                    (true, true) => alpha,
                                    (true, false) => beta,
                                    (false, true) => gamma,
                                    (false, false) => delta,
                                };
                                if m.get(i, j) != want {
                                    return Err(bad("quotient matrix is not block-constant".into()));
                                }
                            }
                        }
                        if gamma < alpha || gamma - alpha != beta.wrapping_sub(delta) || beta < delta {
                            return Err(bad("needs γ-α = β-δ ≥ 0".into()));
                        }
                        check_t_pair(t1, t2, q).map_err(bad)?;
                        let mdim = (gamma - alpha) as usize;
                        let s = shape(p.shape.n() + mdim, q)?;
                        let c = gamma * t1 as u64 + beta * t2 as u64;
                        let b = q as u64 * (gamma + beta) - c;
                        two(s, b, c, vec![0, 0])
                    }
                    InvasionMode::Faces { t, l } => {
                        if p.colors() != qq + 1 {
                            return Err(bad(format!("needs a {}-coloring", qq + 1)));
                        }
                        let (alpha_d, beta, gamma, delta) = (m.get(0, 0), m.get(0, qq), m.get(qq, 0), m.get(qq, qq));
                        let alpha = if qq > 1 { m.get(0, 1) } else { 0 };
                        for i in 0..=qq {
                            for j in 0..=qq {
                                let want = match (i < qq, j < qq) {
                                    (true, true) if i == j => alpha_d,
                                    (true, true) => alpha,
                                    (true, false) => beta,
                                    (false, true) => gamma,
                                    (false, false) => delta,
                                };
                                if m.get(i, j) != want {
                                    return Err(bad("quotient matrix does not have the required form".into()));
                                }
                            }
                        }
                        if gamma < alpha {
                            return Err(bad("needs γ ≥ α".into()));
                        }
                        if t > q || !(l == 1 || l == 2) {
                            return Err(bad(format!("t = {t}, l = {l} out of range")));
                        }
                        if t * (l as u32 - 1) + (q - t) * (2 - l as u32) == 0 {
                            return Err(bad(format!("t = {t} with l = {l} gives a 1-coloring")));
                        }
                        let mdim = (gamma - alpha) as usize;
                        let s = shape(p.shape.n() + mdim, q)?;
                        let b = gamma * (q - t) as u64 + beta * (l as u64 - 1);
                        let c = gamma * t as u64 + beta * (2 - l as u64);
                        let mut dims = vec![0, 0];
                        if let Recipe::SplitIFaces {
                            variant: FaceVariant::DoublePrime,
                            k,
                            ..
                        } = child.as_ref()
                        {
                            if l == 2 {
                                dims[0] = k * qq;
                            }
                        }
                        two(s, b, c, dims)
                    }
                }
            }
            Recipe::FlaassStd { t1, t2, .. } => {
                let p = inner.unwrap();
                let (b, c) = need_two(&p)?;
                let q = p.shape.q();
                if !has_perfect_code_qplus1(q) {
                    return Err(bad(format!("no 1-perfect code in H({},{q})", q + 1)));
                }
                let lambda = p.eigenvalue().unwrap();
                if lambda > 0 {
                    return Err(bad(format!("main eigenvalue {lambda} is positive")));
                }
                check_t_pair(*t1, *t2, q).map_err(bad)?;
                let n = q as i64 * p.shape.n() as i64 - lambda;
                let s = shape(n as usize, q)?;
                let nc = c * *t1 as u64 + b * *t2 as u64;
                two(s, q as u64 * (b + c) - nc, nc, vec![0, 0])
            }
            Recipe::FlaassImpr { variant, t, k, .. } => {
                let p = inner.unwrap();
                flaass_improved_step(&p, *variant, *t, *k).map_err(bad)
            }
            Recipe::FlaassIter { ts, k, .. } => {
                let mut p = inner.unwrap();
                if ts.is_empty() {
                    return Err(bad("needs at least one step".into()));
                }
                let mut k = *k;
                for &t in ts {
                    p = flaass_improved_step(&p, 2, t, k).map_err(bad)?;
                    k = p.face_dims[0];
                }
                Ok(p)
            }
            Recipe::Split2 { q, p, t } => {
                if !(*q == 2 || *q == 3) {
                    return Err(bad(format!(
                        "no line partition of the perfect-code complement is known for q = {q}"
                    )));
                }
                if *p == 0 || *t >= *p {
                    return Err(bad(format!("needs p ≥ 1 and t in 0..{p}")));
                }
                if q * p > MAX_Q {
                    return Err(bad(format!("alphabet {} exceeds {MAX_Q}", q * p)));
                }
                let s = shape(*q as usize + 1, q * p)?;
                let qq = (*q as u64).pow(2) - 1;
                two(s, qq * (*p - *t) as u64, qq * *t as u64 + *p as u64, vec![0, 1])
            }
        }
    }
}

fn check_t_pair(t1: u32, t2: u32, q: u32) -> std::result::Result<(), String> {
    if t1 > q || t2 > q {
        return Err(format!("t1 = {t1}, t2 = {t2} must be at most {q}"));
    }
    if t1 + t2 == 0 || t1 + t2 == 2 * q {
        return Err(format!("t1 + t2 = {} gives a 1-coloring", t1 + t2));
    }
    Ok(())
}

/// (diagonal, off-diagonal) entries among the first q colors of g' or g''.
pub(crate) fn face_split_entries(a: u64, k: u64, q: u64, variant: FaceVariant) -> Option<(u64, u64)> {
    let lost = k * (q - 1);
    if a < lost {
        return None;
    }
    Some(match variant {
        FaceVariant::Prime => (a - lost, a + k),
        FaceVariant::DoublePrime => (a + k * (q - 1) * (q - 1), a - lost),
    })
}

fn flaass_improved_step(p: &Prediction, variant: u8, t: u32, k: usize) -> std::result::Result<Prediction, String> {
    let (b, c) = p.bc().ok_or("needs a 2-coloring")?;
    let q = p.shape.q();
    if !has_perfect_code_qplus1(q) {
        return Err(format!("no 1-perfect code in H({},{q})", q + 1));
    }
    if p.face_dims[0] < k {
        return Err(format!(
            "color 1 is known to split into {}-faces, not {k}-faces",
            p.face_dims[0]
        ));
    }
    if t == 0 || t > q {
        return Err(format!("t = {t} must be in 1..={q}"));
    }
    let lambda = p.eigenvalue().unwrap();
    let k_i = k as i64;
    let qi = q as i64;
    let (n, dims) = match variant {
        1 => {
            if lambda + k_i > 0 {
                return Err(format!("needs λ + k ≤ 0, got λ = {lambda}, k = {k}"));
            }
            (qi * p.shape.n() as i64 - lambda - k_i, vec![0, 0])
        }
        2 => {
            if lambda > k_i * (qi - 1) {
                return Err(format!("needs λ ≤ k(q-1), got λ = {lambda}, k = {k}"));
            }
            if k >= p.shape.n() {
                return Err("k must be below n".into());
            }
            (
                qi * p.shape.n() as i64 - lambda + k_i * (qi - 1),
                vec![k * q as usize, 0],
            )
        }
        v => return Err(format!("variant {v} must be 1 or 2")),
    };
    let s = GraphShape::new(n as usize, q).map_err(|e| e.to_string())?;
    let nc = t as u64 * c;
    let matrix = QuotientMatrix::two_color(s.degree(), q as u64 * (b + c) - nc, nc).map_err(|e| e.to_string())?;
    Ok(Prediction {
        shape: s,
        matrix,
        face_dims: dims,
    })
}

impl fmt::Display for Recipe {
    /// The s-expression form: one node per line, children indented by two spaces.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_node(self, 0, f)
    }
}

fn write_node(r: &Recipe, indent: usize, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    write!(f, "{:indent$}({}", "", r.name())?;
    match r {
        Recipe::Mds2 { n, q, t } => write!(f, " :n {n} :q {q} :t {t}")?,
        Recipe::Perfect { r, q, t } => write!(f, " :r {r} :q {q} :t {t}")?,
        Recipe::Complement(_) => {}
        Recipe::Extend { t, .. } | Recipe::MultLength { t, .. } => write!(f, " :t {t}")?,
        Recipe::MultAlphabet { p, .. } => write!(f, " :p {p}")?,
        Recipe::Lines { color, .. } => write!(f, " :color {color}")?,
        Recipe::SplitIBase { seed, .. } => write!(f, " :seed {seed}")?,
        Recipe::SplitIFaces { variant, k, seed, .. } => {
            let v = match variant {
                FaceVariant::Prime => "prime",
                FaceVariant::DoublePrime => "doubleprime",
            };
            write!(f, " :variant {v} :k {k} :seed {seed}")?
        }
        Recipe::Invasion { mode, .. } => match mode {
            InvasionMode::Faces { t, l } => write!(f, " :t {t} :l {l}")?,
            InvasionMode::Split { t1, t2 } => write!(f, " :t1 {t1} :t2 {t2}")?,
        },
        Recipe::FlaassStd { t1, t2, .. } => write!(f, " :t1 {t1} :t2 {t2}")?,
        Recipe::FlaassImpr { variant, t, k, .. } => write!(f, " :variant {variant} :t {t} :k {k}")?,
        Recipe::FlaassIter { ts, k, .. } => {
            write!(f, " :ts (")?;
            for (i, t) in ts.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{t}")?;
            }
            write!(f, ") :k {k}")?
        }
        Recipe::Split2 { q, p, t } => write!(f, " :q {q} :p {p} :t {t}")?,
    }
    if let Some(inner) = r.inner() {
        writeln!(f)?;
        write_node(inner, indent + 2, f)?;
    }
    write!(f, ")")
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Open,
    Close,
    Atom(String),
}

fn tokenize(text: &str) -> Vec<(Token, usize)> {
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line = line.split(';').next().unwrap_or("");
        let mut atom = String::new();
        let flush = |atom: &mut String, out: &mut Vec<(Token, usize)>| {
            if !atom.is_empty() {
                out.push((Token::Atom(std::mem::take(atom)), ln + 1));
            }
        };
        for ch in line.chars() {
            match ch {
                '(' => {
                    flush(&mut atom, &mut out);
                    out.push((Token::Open, ln + 1));
                }
                ')' => {
                    flush(&mut atom, &mut out);
                    out.push((Token::Close, ln + 1));
                }
                c if c.is_whitespace() => flush(&mut atom, &mut out),
                c => atom.push(c),
            }
        }
        flush(&mut atom, &mut out);
    }
    out
}

#[derive(Debug)]
enum Sexp {
    Atom(String, usize),
    List(Vec<Sexp>, usize),
}

fn parse_sexp(tokens: &[(Token, usize)], pos: &mut usize) -> Result<Sexp> {
    let err = |line: usize, msg: &str| Error::Parse {
        line,
        msg: msg.to_string(),
    };
    let Some((tok, line)) = tokens.get(*pos) else {
        let line = tokens.last().map_or(1, |t| t.1);
        return Err(err(line, "unexpected end of input"));
    };
    *pos += 1;
    match tok {
        Token::Atom(a) => Ok(Sexp::Atom(a.clone(), *line)),
        Token::Close => Err(err(*line, "unexpected ')'")),
        Token::Open => {
            let mut items = Vec::new();
            loop {
                match tokens.get(*pos) {
                    None => return Err(err(*line, "unclosed '('")),
                    Some((Token::Close, _)) => {
                        *pos += 1;
                        return Ok(Sexp::List(items, *line));
                    }
                    Some(_) => items.push(parse_sexp(tokens, pos)?),
                }
            }
        }
    }
}

impl std::str::FromStr for Recipe {
    type Err = Error;

    fn from_str(text: &str) -> Result<Recipe> {
        let tokens = tokenize(text);
        let mut pos = 0;
        let sexp = parse_sexp(&tokens, &mut pos)?;
        if let Some((_, line)) = tokens.get(pos) {
            return Err(Error::Parse {
                line: *line,
                msg: "trailing input after recipe".into(),
            });
        }
        from_sexp(&sexp)
    }
}

fn from_sexp(s: &Sexp) -> Result<Recipe> {
    let (items, line) = match s {
        Sexp::List(items, line) => (items, *line),
        Sexp::Atom(a, line) => {
            return Err(Error::Parse {
                line: *line,
                msg: format!("expected '(' but found '{a}'"),
            })
        }
    };
    let perr = |msg: String| Error::Parse { line, msg };
    let Some(Sexp::Atom(name, _)) = items.first() else {
        return Err(perr("missing node name".into()));
    };
    let mut kw: Vec<(String, &Sexp)> = Vec::new();
    let mut children = Vec::new();
    let mut i = 1;
    while i < items.len() {
        match &items[i] {
            Sexp::Atom(a, _) if a.starts_with(':') => {
                let v = items
                    .get(i + 1)
                    .ok_or_else(|| perr(format!("keyword {a} lacks a value")))?;
                kw.push((a[1..].to_string(), v));
                i += 2;
            }
            Sexp::Atom(a, _) => return Err(perr(format!("unexpected atom '{a}'"))),
            list => {
                children.push(from_sexp(list)?);
                i += 1;
            }
        }
    }
    let get = |key: &str| -> Result<&Sexp> {
        kw.iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| *v)
            .ok_or_else(|| perr(format!("{name} needs :{key}")))
    };
    let atom = |key: &str| -> Result<String> {
        match get(key)? {
            Sexp::Atom(a, _) => Ok(a.clone()),
            _ => Err(perr(format!(":{key} must be an atom"))),
        }
    };
    let num = |key: &str| -> Result<u64> {
        atom(key)?
            .parse()
            .map_err(|_| perr(format!(":{key} must be a nonnegative integer")))
    };
    let opt_num = |key: &str, default: u64| -> Result<u64> {
        if kw.iter().any(|(k, _)| k == key) {
            num(key)
        } else {
            Ok(default)
        }
    };
    let known: &[&str] = match name.as_str() {
        "mds2" => &["n", "q", "t"],
        "perfect" => &["r", "q", "t"],
        "complement" => &[],
        "extend" | "mult-length" => &["t"],
        "mult-alphabet" => &["p"],
        "lines" => &["color"],
        "split1-base" => &["seed"],
        "split1-faces" => &["variant", "k", "seed"],
        "invasion" => &["t", "l", "t1", "t2"],
        "flaass-std" => &["t1", "t2"],
        "flaass-impr" => &["variant", "t", "k"],
        "flaass-iter" => &["ts", "k"],
        "split2" => &["q", "p", "t"],
        other => return Err(perr(format!("unknown node '{other}'"))),
    };
    if let Some((k, _)) = kw.iter().find(|(k, _)| !known.contains(&k.as_str())) {
        return Err(perr(format!("{name} has no keyword :{k}")));
    }
    let leaf = matches!(name.as_str(), "mds2" | "perfect" | "split2");
    let child = if leaf {
        if !children.is_empty() {
            return Err(perr(format!("{name} takes no sub-recipe")));
        }
        None
    } else {
        if children.len() != 1 {
            return Err(perr(format!("{name} takes exactly one sub-recipe")));
        }
        Some(Box::new(children.pop().unwrap()))
    };
    let small =
        |key: &str| -> Result<u32> { u32::try_from(num(key)?).map_err(|_| perr(format!(":{key} is too large"))) };
    let r = match name.as_str() {
        "mds2" => Recipe::Mds2 {
            n: num("n")? as usize,
            q: small("q")?,
            t: small("t")?,
        },
        "perfect" => Recipe::Perfect {
            r: small("r")?,
            q: small("q")?,
            t: small("t")?,
        },
        "complement" => Recipe::Complement(child.unwrap()),
        "extend" => Recipe::Extend {
            t: num("t")? as usize,
            inner: child.unwrap(),
        },
        "mult-length" => Recipe::MultLength {
            t: num("t")? as usize,
            inner: child.unwrap(),
        },
        "mult-alphabet" => Recipe::MultAlphabet {
            p: small("p")?,
            inner: child.unwrap(),
        },
        "lines" => Recipe::Lines {
            color: u8::try_from(num("color")?).map_err(|_| perr(":color is too large".into()))?,
            inner: child.unwrap(),
        },
        "split1-base" => Recipe::SplitIBase {
            seed: opt_num("seed", 0)?,
            inner: child.unwrap(),
        },
        "split1-faces" => Recipe::SplitIFaces {
            variant: match atom("variant")?.as_str() {
                "prime" => FaceVariant::Prime,
                "doubleprime" => FaceVariant::DoublePrime,
                v => return Err(perr(format!("unknown variant '{v}'"))),
            },
            k: num("k")? as usize,
            seed: opt_num("seed", 0)?,
            inner: child.unwrap(),
        },
        "invasion" => {
            let has = |k: &str| kw.iter().any(|(x, _)| x == k);
            let mode = if has("t1") || has("t2") {
                InvasionMode::Split {
                    t1: small("t1")?,
                    t2: small("t2")?,
                }
            } else {
                InvasionMode::Faces {
                    t: small("t")?,
                    l: u8::try_from(num("l")?).map_err(|_| perr(":l is too large".into()))?,
                }
            };
            Recipe::Invasion {
                mode,
                inner: child.unwrap(),
            }
        }
        "flaass-std" => Recipe::FlaassStd {
            t1: small("t1")?,
            t2: small("t2")?,
            inner: child.unwrap(),
        },
        "flaass-impr" => Recipe::FlaassImpr {
            variant: u8::try_from(num("variant")?).map_err(|_| perr(":variant is too large".into()))?,
            t: small("t")?,
            k: num("k")? as usize,
            inner: child.unwrap(),
        },
        "flaass-iter" => {
            let ts = match get("ts")? {
                Sexp::List(items, _) => items
                    .iter()
                    .map(|x| match x {
                        Sexp::Atom(a, _) => a.parse::<u32>().map_err(|_| perr(format!("bad multiplier '{a}'"))),
                        _ => Err(perr("nested list in :ts".into())),
                    })
                    .collect::<Result<Vec<u32>>>()?,
                Sexp::Atom(a, _) => vec![a.parse::<u32>().map_err(|_| perr(format!("bad multiplier '{a}'")))?],
            };
            Recipe::FlaassIter {
                ts,
                k: num("k")? as usize,
                inner: child.unwrap(),
            }
        }
        "split2" => Recipe::Split2 {
            q: small("q")?,
            p: small("p")?,
            t: small("t")?,
        },
        _ => unreachable!(),
    };
    Ok(r)
}
