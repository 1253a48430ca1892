//! The splitting constructions: 2q- and (q+1)-colorings of H(qn,q) built
//! from the H(q,q) decomposition, their invasions, and the alphabet split of
//! a perfect code whose complement is partitioned into lines.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};
use std::time::Duration;

use super::faces::{edge_partition_binary, line_partition_search, LineSearch};
use super::invasion::{g_coloring, invasion, Filler};
use crate::algebra::field::prime_power;
use crate::algebra::quasigroup::{IteratedSum, Quasigroup};
use crate::analysis::extract_quotient;
use crate::codes::{hamming_perfect_coloring, hqq_decomposition, mds2_coloring, MdsPartition};
use crate::coloring::{default_budget, Coloring, DirsFn, FacePartition, QuotientMatrix};
use crate::error::{Error, Result};
use crate::hamming::{rank_usize, GraphShape, Symbol};
use crate::recipe::FaceVariant;

/// Time allowed for finding the line partition of a perfect-code complement.
pub const LINE_SEARCH_TIMEOUT: Duration = Duration::from_secs(60);

/// The decomposition of H(q,q), computed once per q.
pub fn cached_hqq(q: u32) -> Result<Arc<MdsPartition>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<MdsPartition>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().unwrap().get(&q) {
        return Ok(p.clone());
    }
    let p = Arc::new(hqq_decomposition(q)?);
    cache.lock().unwrap().insert(q, p.clone());
    Ok(p)
}

/// The Hamming code of H(q+1,q) with a line partition of its complement
/// (color 2), found by matching for q = 2 and by search otherwise.
pub fn perfect_code_with_lines(q: u32) -> Result<Coloring> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Coloring>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(c) = cache.lock().unwrap().get(&q) {
        return Ok(c.clone());
    }
    let code = hamming_perfect_coloring(2, q)?
        .to_coloring()
        .materialize(default_budget())?;
    let fp = if q == 2 {
        edge_partition_binary(&code, 2, default_budget())?
    } else {
        match line_partition_search(&code, 2, LINE_SEARCH_TIMEOUT, default_budget())? {
            LineSearch::Found(fp) => fp,
            LineSearch::NotFound => {
                return Err(Error::NoPartition(format!(
                    "the complement of the Hamming code in H({},{q}) has no line partition",
                    q + 1
                )))
            }
            LineSearch::Timeout => {
                return Err(Error::NoPartition(format!(
                    "line search in H({},{q}) timed out; existence is unknown",
                    q + 1
                )))
            }
        }
    };
    let c = code.with_face_partition(fp);
    cache.lock().unwrap().insert(q, c.clone());
    Ok(c)
}

/// The quotient matrix from the recipe if known, else by a full scan.
pub(crate) fn quotient_of(f: &Coloring) -> Result<QuotientMatrix> {
    match f.recipe() {
        Some(r) => Ok(r.predict()?.matrix),
        None => extract_quotient(f, default_budget()),
    }
}

fn require_perfect_code(q: u32) -> Result<()> {
    if prime_power(q as u64).is_none() {
        return Err(Error::Unsupported(format!(
            "no 1-perfect code in H({},{q}) is available",
            q + 1
        )));
    }
    Ok(())
}

/// X_y and J_y of a vertex of H(qn,q): block and refinement index of each
/// consecutive q-tuple.
#[derive(Clone)]
struct Blocks {
    part: Arc<MdsPartition>,
    q: u32,
}

impl Blocks {
    fn new(part: &MdsPartition) -> Result<Self> {
        let q = part.q();
        if part.m() != q as usize {
            return Err(Error::InvalidPartition(format!(
                "expected a partition of H({q},{q}), got H({},{q})",
                part.m()
            )));
        }
        if part.refine_table().is_none() {
            return Err(Error::InvalidPartition(
                "the blocks are not refined into distance-3 codes".into(),
            ));
        }
        part.validate_blocks()?;
        Ok(Blocks {
            part: Arc::new(part.clone()),
            q,
        })
    }

    fn from_arc(part: Arc<MdsPartition>) -> Result<Self> {
        let b = Blocks::new(&part)?;
        Ok(Blocks { part, q: b.q })
    }

    fn split(&self, y: &[Symbol]) -> (Vec<Symbol>, Vec<Symbol>) {
        let q = self.q as usize;
        let block = self.part.block_table();
        let refine = self.part.refine_table().unwrap();
        y.chunks(q)
            .map(|c| {
                let r = rank_usize(c, self.q);
                (block[r], refine[r])
            })
            .unzip()
    }
}

fn check_quasigroup(r: &dyn Quasigroup, arity: usize, q: u32) -> Result<()> {
    if r.arity() != arity || r.order() != q {
        return Err(Error::param(format!(
            "quasigroup of arity {} and order {}, expected {arity} and {q}",
            r.arity(),
            r.order()
        )));
    }
    Ok(())
}

/// g(y) = q(f(X_y) - 1) + R(J_y) + 1 on H(qn,q), a 2q-coloring with the
/// block-constant matrix [[a..a, b..b], [c..c, d..d]].
pub fn split_i_base(f: &Coloring, partition: &MdsPartition, r: Arc<dyn Quasigroup>) -> Result<Coloring> {
    split_i_base_with(f, Blocks::new(partition)?, r)
}

fn split_i_base_with(f: &Coloring, blocks: Blocks, r: Arc<dyn Quasigroup>) -> Result<Coloring> {
    let shape = f.shape();
    let q = shape.q();
    if f.colors() != 2 || blocks.q != q {
        return Err(Error::param(
            "split_i_base needs a 2-coloring over the partition's alphabet",
        ));
    }
    check_quasigroup(r.as_ref(), shape.n(), q)?;
    let out = GraphShape::new(shape.n() * q as usize, q)?;
    let f = f.clone();
    Ok(Coloring::new(out, 2 * q as u8, move |y| {
        let (x, j) = blocks.split(y);
        q as u8 * (f.color_of(&x) - 1) + r.eval(&j) + 1
    }))
}

/// The first k free directions of each face, as a partition into k-faces.
fn restrict(fp: &FacePartition, k: usize) -> Result<DirsFn> {
    if fp.dim() < k {
        return Err(Error::NoPartition(format!(
            "color {} is partitioned into {}-faces, {k}-faces requested",
            fp.color(),
            fp.dim()
        )));
    }
    let dirs = fp.dirs_fn();
    Ok(Arc::new(move |x: &[Symbol]| {
        let mut d = dirs(x);
        d.sort_unstable();
        d.truncate(k);
        d
    }))
}

fn face_dirs_of(f: &Coloring, k: usize) -> Result<DirsFn> {
    if k == 0 {
        return Ok(Arc::new(|_: &[Symbol]| Vec::new()));
    }
    let fp = f
        .face_partition(1)
        .ok_or_else(|| Error::NoPartition("color 1 carries no face partition".into()))?;
    restrict(fp, k)
}

/// The (q+1)-colorings g' (`Prime`) and g'' (`DoublePrime`) of H(qn,q) from
/// a partition of color 1 of `f` into k-faces.
pub fn split_i_faces(
    f: &Coloring,
    fp: &FacePartition,
    k: usize,
    partition: &MdsPartition,
    variant: FaceVariant,
    r: Arc<dyn Quasigroup>,
) -> Result<Coloring> {
    if fp.color() != 1 {
        return Err(Error::param("the face partition must cover color 1"));
    }
    let special = if k == 0 {
        Arc::new(|_: &[Symbol]| Vec::new()) as DirsFn
    } else {
        restrict(fp, k)?
    };
    split_i_faces_with(f, special, k, Blocks::new(partition)?, variant, r)
}

fn split_i_faces_with(
    f: &Coloring,
    special: DirsFn,
    k: usize,
    blocks: Blocks,
    variant: FaceVariant,
    r: Arc<dyn Quasigroup>,
) -> Result<Coloring> {
    let shape = f.shape();
    let (n, q) = (shape.n(), shape.q());
    if f.colors() != 2 || blocks.q != q {
        return Err(Error::param(
            "split_i_faces needs a 2-coloring over the partition's alphabet",
        ));
    }
    let arity = match variant {
        FaceVariant::Prime => n,
        FaceVariant::DoublePrime => n
            .checked_sub(k)
            .filter(|&a| a > 0)
            .ok_or_else(|| Error::param("k must be below n"))?,
    };
    check_quasigroup(r.as_ref(), arity, q)?;
    let out = GraphShape::new(n * q as usize, q)?;
    let f = f.clone();
    Ok(Coloring::new(out, q as u8 + 1, move |y| {
        let (x, mut j) = blocks.split(y);
        if f.color_of(&x) != 1 {
            return q as u8 + 1;
        }
        let dirs = special(&x);
        match variant {
            FaceVariant::Prime => {
                for &i in &dirs {
                    j[i] = x[i];
                }
                r.eval(&j) + 1
            }
            FaceVariant::DoublePrime => {
                let rest: Vec<Symbol> = (0..n).filter(|i| !dirs.contains(i)).map(|i| j[i]).collect();
                r.eval(&rest) + 1
            }
        }
    }))
}

/// Fillers G^1_t..G^q_t for each block of q colors.
fn g_fillers(q: u32, m: usize, ts: &[u32]) -> Result<Vec<Filler>> {
    let mut out = Vec::new();
    for &t in ts {
        for i in 1..=q {
            out.push(g_coloring(i, t, m, q)?);
        }
    }
    Ok(out)
}

fn main_eigenvalue(f: &Coloring) -> Result<(i64, u64, u64)> {
    if f.colors() != 2 {
        return Err(Error::param("needs a 2-coloring"));
    }
    let m = quotient_of(f)?;
    let (b, c) = m.bc().unwrap();
    Ok((m.main_eigenvalue().unwrap(), b, c))
}

/// Invasion of a block-constant 2q-coloring by G^i_{t1} (first q colors)
/// and G^i_{t2} (last q colors).
pub fn invade_split(g: &Coloring, m: usize, t1: u32, t2: u32) -> Result<Coloring> {
    let q = g.shape().q();
    if t1 > q || t2 > q || t1 + t2 == 0 || t1 + t2 == 2 * q {
        return Err(Error::param(format!("t1 = {t1}, t2 = {t2} out of range for q = {q}")));
    }
    invasion(g, m, g_fillers(q, m, &[t1, t2])?)
}

/// Invasion of a (q+1)-coloring by G^1_t..G^q_t and the solid color `l`.
pub fn invade_faces(g: &Coloring, m: usize, t: u32, l: u8) -> Result<Coloring> {
    let q = g.shape().q();
    if t > q || !(l == 1 || l == 2) || t * (l as u32 - 1) + (q - t) * (2 - l as u32) == 0 {
        return Err(Error::param(format!("t = {t}, l = {l} out of range for q = {q}")));
    }
    let mut fillers = g_fillers(q, m, &[t])?;
    fillers.push(Filler::Solid(l));
    invasion(g, m, fillers)
}

/// (q(b+c) - (c t1 + b t2), c t1 + b t2)-coloring of H(qn - λ, q) for λ ≤ 0.
pub fn flaass_standard(f: &Coloring, t1: u32, t2: u32, seed: u64) -> Result<Coloring> {
    let (lambda, _, _) = main_eigenvalue(f)?;
    let shape = f.shape();
    let q = shape.q();
    require_perfect_code(q)?;
    if lambda > 0 {
        return Err(Error::param(format!("main eigenvalue {lambda} is positive")));
    }
    let blocks = Blocks::from_arc(cached_hqq(q)?)?;
    let r = Arc::new(IteratedSum::isotope(shape.n(), q, seed));
    let g = split_i_base_with(f, blocks, r)?;
    invade_split(&g, (-lambda) as usize, t1, t2)
}

/// (q(b+c) - tc, tc)-coloring from a partition of color 1 into k-faces.
///
/// Variant 1 needs λ + k ≤ 0 and lands in H(qn - λ - k, q); variant 2 needs
/// λ ≤ k(q-1), lands in H(qn - λ + k(q-1), q) and partitions color 1 into
/// kq-faces.
pub fn flaass_improved(f: &Coloring, variant: u8, t: u32, k: usize, seed: u64) -> Result<Coloring> {
    let (lambda, _, _) = main_eigenvalue(f)?;
    let shape = f.shape();
    let (n, q) = (shape.n(), shape.q());
    require_perfect_code(q)?;
    if t == 0 || t > q {
        return Err(Error::param(format!("t = {t} must be in 1..={q}")));
    }
    let ki = k as i64;
    match variant {
        1 => {
            if lambda + ki > 0 {
                return Err(Error::param(format!("needs λ + k ≤ 0, got λ = {lambda}, k = {k}")));
            }
            let g = split_i_faces_seeded(f, FaceVariant::Prime, k, seed)?;
            invade_faces(&g, (-lambda - ki) as usize, t, 2)
        }
        2 => {
            if lambda > ki * (q as i64 - 1) {
                return Err(Error::param(format!("needs λ ≤ k(q-1), got λ = {lambda}, k = {k}")));
            }
            if k >= n {
                return Err(Error::param("k must be below n"));
            }
            double_prime_invasion(f, k, seed, (-lambda + ki * (q as i64 - 1)) as usize, t)
        }
        v => Err(Error::param(format!("variant {v} must be 1 or 2"))),
    }
}

/// g' or g'' from the k-face partition carried by color 1 of `f`, with the
/// isotope of the iterated sum drawn from `seed`.
pub(crate) fn split_i_faces_seeded(f: &Coloring, variant: FaceVariant, k: usize, seed: u64) -> Result<Coloring> {
    let shape = f.shape();
    let (n, q) = (shape.n(), shape.q());
    require_perfect_code(q)?;
    let arity = match variant {
        FaceVariant::Prime => n,
        FaceVariant::DoublePrime => n.saturating_sub(k),
    };
    let special = face_dirs_of(f, k)?;
    let blocks = Blocks::from_arc(cached_hqq(q)?)?;
    split_i_faces_with(
        f,
        special,
        k,
        blocks,
        variant,
        Arc::new(IteratedSum::isotope(arity, q, seed)),
    )
}

/// Invasion of g'' by G^1_t..G^q_t and solid 2 into H(qn+m,q), with the
/// kq-face partition of color 1 attached.
pub(crate) fn double_prime_invasion(f: &Coloring, k: usize, seed: u64, m: usize, t: u32) -> Result<Coloring> {
    let shape = f.shape();
    let (n, q) = (shape.n(), shape.q());
    require_perfect_code(q)?;
    if k >= n {
        return Err(Error::param("k must be below n"));
    }
    let special = face_dirs_of(f, k)?;
    let blocks = Blocks::from_arc(cached_hqq(q)?)?;
    let r = Arc::new(IteratedSum::isotope(n - k, q, seed));
    let g = split_i_faces_with(f, special.clone(), k, blocks.clone(), FaceVariant::DoublePrime, r)?;
    let out = invade_faces(&g, m, t, 2)?;
    Ok(attach_block_faces(out, special, blocks, n, k))
}

/// Color 1 of an invasion over g'' splits into kq-faces: the blocks of the
/// special directions of X_y.
fn attach_block_faces(out: Coloring, special: DirsFn, blocks: Blocks, n: usize, k: usize) -> Coloring {
    if k == 0 {
        return out;
    }
    let q = blocks.q as usize;
    out.with_face_partition(FacePartition::from_arc(
        1,
        k * q,
        Arc::new(move |v: &[Symbol]| {
            let (x, _) = blocks.split(&v[..n * q]);
            special(&x).into_iter().flat_map(|i| i * q..(i + 1) * q).collect()
        }),
    ))
}

/// Repeated variant-2 steps; the face dimension after each step is kq.
pub fn flaass_iterated(f: &Coloring, ts: &[u32], k: usize, seed: u64) -> Result<Coloring> {
    if ts.is_empty() {
        return Err(Error::param("flaass_iterated needs at least one step"));
    }
    let mut cur = f.clone();
    let mut k = k;
    for &t in ts {
        cur = flaass_improved(&cur, 2, t, k, seed)?;
        k *= cur.shape().q() as usize;
    }
    Ok(cur)
}

/// ((q²-1)(p-t), (q²-1)t + p)-coloring of H(q+1, pq) from a perfect code of
/// H(q+1,q) whose color 2 carries a line partition. Color 2 of the output is
/// partitioned into lines.
pub fn split_ii(base: &Coloring, p: u32, t: u32) -> Result<Coloring> {
    let shape = base.shape();
    let q = shape.q();
    if shape.n() != q as usize + 1 || base.colors() != 2 {
        return Err(Error::param(format!("split_ii needs a 2-coloring of H({},{q})", q + 1)));
    }
    let m = quotient_of(base)?;
    if m.bc() != Some((q as u64 * q as u64 - 1, 1)) {
        return Err(Error::param(format!("base has matrix {m}, not a 1-perfect code")));
    }
    let fp = base
        .face_partition(2)
        .filter(|fp| fp.dim() == 1)
        .ok_or_else(|| Error::NoPartition("color 2 of the base carries no line partition".into()))?;
    if p == 0 || t >= p {
        return Err(Error::param(format!("needs p ≥ 1 and 0 ≤ t < p, got p = {p}, t = {t}")));
    }
    let big = q * p;
    let out = GraphShape::new(q as usize + 1, big)?;
    let g = if t == 0 {
        None
    } else {
        Some(mds2_coloring(q as usize, p, t)?)
    };
    let dirs = fp.dirs_fn();
    let dirs2 = dirs.clone();
    let f = base.clone();
    let coloring = Coloring::new(out, 2, move |y| {
        let x: Vec<Symbol> = y.iter().map(|&s| (s as u32 % q) as Symbol).collect();
        if f.color_of(&x) == 1 {
            return 1;
        }
        let Some(g) = &g else { return 2 };
        let special = dirs(&x)[0];
        let rest: Vec<Symbol> = y
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != special)
            .map(|(_, &s)| (s as u32 / q) as Symbol)
            .collect();
        if g.contains(&rest) {
            1
        } else {
            2
        }
    });
    Ok(coloring.with_face_partition(FacePartition::from_arc(
        2,
        1,
        Arc::new(move |y: &[Symbol]| {
            let x: Vec<Symbol> = y.iter().map(|&s| (s as u32 % q) as Symbol).collect();
            dirs2(&x)
        }),
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::quasigroup::iterated_sum_quasigroup;
    use crate::codes::tfold_perfect_coloring;
    use crate::constructions::faces::edge_partition_binary;

    const B: u64 = 1 << 22;

    fn k3() -> Coloring {
        tfold_perfect_coloring(1, 1, 3).unwrap().to_coloring()
    }

    fn block_matrix(q: usize, a: u64, b: u64, c: u64, d: u64) -> Vec<Vec<u64>> {
        (0..2 * q)
            .map(|i| {
                (0..2 * q)
                    .map(|j| match (i < q, j < q) {
                        (true, true) => a,
                        (true, false) => b,
                        (false, true) => c,
                        (false, false) => d,
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn split_i_base_examples() {
        let p3 = hqq_decomposition(3).unwrap();
        let g = split_i_base(&k3(), &p3, Arc::new(iterated_sum_quasigroup(1, 3))).unwrap();
        assert_eq!(g.shape(), GraphShape::new(3, 3).unwrap());
        assert_eq!(extract_quotient(&g, B).unwrap().rows(), block_matrix(3, 0, 2, 1, 1));
        let k2 = tfold_perfect_coloring(1, 1, 2).unwrap().to_coloring();
        let p2 = hqq_decomposition(2).unwrap();
        let g = split_i_base(&k2, &p2, Arc::new(iterated_sum_quasigroup(1, 2))).unwrap();
        assert_eq!(extract_quotient(&g, B).unwrap().rows(), block_matrix(2, 0, 1, 1, 0));
        let m = mds2_coloring(2, 3, 1).unwrap().to_coloring();
        let g = split_i_base(&m, &p3, Arc::new(IteratedSum::isotope(2, 3, 7))).unwrap();
        assert_eq!(extract_quotient(&g, B).unwrap().rows(), block_matrix(3, 0, 4, 2, 2));
        assert!(split_i_base(&m, &p3, Arc::new(iterated_sum_quasigroup(3, 3))).is_err());
        let unrefined = MdsPartition::zero_sum(3, 3).unwrap();
        assert!(split_i_base(&k3(), &unrefined, Arc::new(iterated_sum_quasigroup(1, 3))).is_err());
    }

    #[test]
    fn split_i_faces_matrices() {
        // (1,3) on H(3,2): the binary Hamming complement as color 1.
        let h = hamming_perfect_coloring(2, 2)
            .unwrap()
            .to_coloring()
            .complement()
            .unwrap();
        let fp = edge_partition_binary(&h, 1, B).unwrap();
        let p2 = hqq_decomposition(2).unwrap();
        let g1 = split_i_faces(
            &h,
            &fp,
            1,
            &p2,
            FaceVariant::Prime,
            Arc::new(iterated_sum_quasigroup(3, 2)),
        )
        .unwrap();
        assert_eq!(
            extract_quotient(&g1, B).unwrap().rows(),
            vec![vec![1, 3, 2], vec![3, 1, 2], vec![3, 3, 0]]
        );
        let g2 = split_i_faces(
            &h,
            &fp,
            1,
            &p2,
            FaceVariant::DoublePrime,
            Arc::new(iterated_sum_quasigroup(2, 2)),
        )
        .unwrap();
        assert_eq!(
            extract_quotient(&g2, B).unwrap().rows(),
            vec![vec![3, 1, 2], vec![1, 3, 2], vec![3, 3, 0]]
        );
        let wrong = FacePartition::new(2, 1, |_| vec![0]);
        assert!(split_i_faces(
            &h,
            &wrong,
            1,
            &p2,
            FaceVariant::Prime,
            Arc::new(iterated_sum_quasigroup(3, 2))
        )
        .is_err());
        assert!(split_i_faces(
            &h,
            &fp,
            2,
            &p2,
            FaceVariant::Prime,
            Arc::new(iterated_sum_quasigroup(3, 2))
        )
        .is_err());
    }

    #[test]
    fn flaass_standard_small_family() {
        for (t1, t2, bc) in [(1, 0, (8, 1)), (0, 2, (5, 4)), (2, 0, (7, 2)), (1, 1, (6, 3))] {
            let f = flaass_standard(&k3(), t1, t2, 0).unwrap();
            assert_eq!(f.shape(), GraphShape::new(4, 3).unwrap());
            let m = extract_quotient(&f, B).unwrap();
            assert_eq!(m.bc(), Some(bc), "t1={t1} t2={t2}");
            assert_eq!(m.main_eigenvalue(), Some(-1));
        }
        assert!(flaass_standard(&k3(), 0, 0, 0).is_err());
        assert!(flaass_standard(&k3(), 3, 3, 0).is_err());
        let positive = crate::constructions::extend_dimension(&k3(), 1).unwrap();
        assert!(flaass_standard(&positive, 1, 0, 0).is_err());
    }

    #[test]
    fn flaass_standard_with_isotopes() {
        for seed in [1, 2, 3] {
            let f = flaass_standard(&k3(), 2, 1, seed).unwrap();
            assert_eq!(extract_quotient(&f, B).unwrap().bc(), Some((5, 4)));
        }
    }

    #[test]
    fn flaass_improved_binary() {
        // (1,3) on H(3,2) with λ = -1 and edges: variant 1 gives H(6,2).
        let h = hamming_perfect_coloring(2, 2)
            .unwrap()
            .to_coloring()
            .complement()
            .unwrap();
        let fp = edge_partition_binary(&h, 1, B).unwrap();
        let h = h.with_face_partition(fp);
        for t in 1..=2 {
            let f = flaass_improved(&h, 1, t, 1, 0).unwrap();
            assert_eq!(f.shape(), GraphShape::new(6, 2).unwrap());
            let m = extract_quotient(&f, B).unwrap();
            assert_eq!(m.bc(), Some((8 - 3 * t as u64, 3 * t as u64)));
            assert_eq!(m.main_eigenvalue(), Some(-2));
        }
        let f = flaass_improved(&h, 2, 1, 1, 0).unwrap();
        assert_eq!(f.shape(), GraphShape::new(8, 2).unwrap());
        let m = extract_quotient(&f, B).unwrap();
        assert_eq!(m.bc(), Some((5, 3)));
        assert_eq!(m.main_eigenvalue(), Some(0));
        let fp = f.face_partition(1).unwrap();
        assert_eq!(fp.dim(), 2);
        fp.validate(&f, B).unwrap();
        assert!(flaass_improved(&h, 1, 0, 1, 0).is_err());
        assert!(flaass_improved(&h, 3, 1, 1, 0).is_err());
    }

    #[test]
    fn split_ii_binary() {
        let base = perfect_code_with_lines(2).unwrap();
        for (p, t, bc) in [(2, 1, (3, 5)), (2, 0, (6, 2)), (3, 1, (6, 6)), (3, 2, (3, 9))] {
            let c = split_ii(&base, p, t).unwrap();
            assert_eq!(c.shape(), GraphShape::new(3, 2 * p).unwrap());
            assert_eq!(extract_quotient(&c, B).unwrap().bc(), Some(bc));
            c.face_partition(2).unwrap().validate(&c, B).unwrap();
        }
        assert!(split_ii(&base, 2, 2).is_err());
        let bare = hamming_perfect_coloring(2, 2).unwrap().to_coloring();
        assert!(split_ii(&bare, 2, 1).is_err());
    }
}
