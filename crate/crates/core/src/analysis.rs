//! Verification of perfect colorings, quotient extraction, face balance and
//! weight distributions.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::coloring::{chunk_len, Coloring, QuotientMatrix};
use crate::error::{Error, Result};
use crate::hamming::{binomial, increment, rank_unchecked, unrank_into, Face, GraphShape, Symbol, Vertex};
use crate::rng::SplitMix64;

/// Neighbor color counts of `v` (rank `rank`) into `out[0..k]`.
fn neighbor_row(c: &Coloring, v: &mut [Symbol], rank: usize, pows: &[usize], out: &mut [u64]) {
    out.iter_mut().for_each(|x| *x = 0);
    let q = c.shape().q() as usize;
    if let Some(t) = c.dense_table() {
        for (i, &p) in pows.iter().enumerate() {
            let base = rank - v[i] as usize * p;
            for s in 0..q {
                if s != v[i] as usize {
                    out[t[base + s * p] as usize - 1] += 1;
                }
            }
        }
        return;
    }
    for i in 0..v.len() {
        let keep = v[i];
        for s in 0..q as Symbol {
            if s != keep {
                v[i] = s;
                let col = c.color_of(v) as usize;
                if (1..=out.len()).contains(&col) {
                    out[col - 1] += 1;
                }
            }
        }
        v[i] = keep;
    }
}

fn powers(shape: GraphShape) -> Vec<usize> {
    let q = shape.q() as usize;
    let mut p = Vec::with_capacity(shape.n());
    let mut x = 1usize;
    for _ in 0..shape.n() {
        p.push(x);
        x = x.saturating_mul(q);
    }
    p
}

/// A vertex whose neighbor counts disagree with its row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub rank: u128,
    pub vertex: Vertex,
    pub color: u8,
    pub expected: Vec<u64>,
    pub observed: Vec<u64>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "rank {} vertex {} color {}: expected {:?}, observed {:?}",
            self.rank, self.vertex, self.color, self.expected, self.observed
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyMode {
    Full,
    Sampled { samples: u64, seed: u64 },
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub mode: VerifyMode,
    pub matrix: QuotientMatrix,
    pub checked: u64,
    pub violations: Vec<Violation>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn note(&self) -> &'static str {
        match self.mode {
            VerifyMode::Full => "exhaustive",
            VerifyMode::Sampled { .. } => "necessary-condition only",
        }
    }
}

const MAX_VIOLATIONS: usize = 16;

/// Checks one vertex against `rows`; `v` must hold the vertex of rank `rank`.
fn check_vertex(
    c: &Coloring,
    rows: &QuotientMatrix,
    v: &mut [Symbol],
    rank: usize,
    pows: &[usize],
    buf: &mut [u64],
) -> Option<Violation> {
    let col = c.color_of(v);
    let k = rows.k();
    if col == 0 || col as usize > k {
        return Some(Violation {
            rank: rank as u128,
            vertex: Vertex::from(&*v),
            color: col,
            expected: vec![],
            observed: vec![],
        });
    }
    neighbor_row(c, v, rank, pows, buf);
    let want = rows.row(col as usize - 1);
    (buf != want).then(|| Violation {
        rank: rank as u128,
        vertex: Vertex::from(&*v),
        color: col,
        expected: want.to_vec(),
        observed: buf.to_vec(),
    })
}

/// Scans every vertex; returns the smallest-rank violation, if any.
fn scan_full(c: &Coloring, rows: &QuotientMatrix, len: usize) -> Option<Violation> {
    let shape = c.shape();
    let pows = powers(shape);
    let chunk = chunk_len(len);
    let k = rows.k();
    (0..len.div_ceil(chunk))
        .into_par_iter()
        .filter_map(|ci| {
            let start = ci * chunk;
            let end = (start + chunk).min(len);
            let mut v = vec![0 as Symbol; shape.n()];
            unrank_into(start as u128, shape.q(), &mut v);
            let mut buf = vec![0u64; k];
            for r in start..end {
                if let Some(w) = check_vertex(c, rows, &mut v, r, &pows, &mut buf) {
                    return Some(w);
                }
                increment(&mut v, shape.q());
            }
            None
        })
        .min_by_key(|w| w.rank)
}

/// The quotient matrix of `c`, or the first vertex showing it is not perfect.
pub fn extract_quotient(c: &Coloring, budget: u64) -> Result<QuotientMatrix> {
    let shape = c.shape();
    let len = shape
        .vertex_count_within(budget)
        .ok_or_else(|| shape.budget_error(budget))?;
    let c = &c.materialize(budget)?;
    let k = c.colors() as usize;
    let pows = powers(shape);
    let mut rows: Vec<Option<Vec<u64>>> = vec![None; k];
    let mut missing = k;
    let mut v = vec![0 as Symbol; shape.n()];
    let mut buf = vec![0u64; k];
    for r in 0..len {
        let col = c.color_of(&v) as usize;
        if rows[col - 1].is_none() {
            neighbor_row(c, &mut v, r, &pows, &mut buf);
            rows[col - 1] = Some(buf.clone());
            missing -= 1;
            if missing == 0 {
                break;
            }
        }
        increment(&mut v, shape.q());
    }
    if missing > 0 {
        let absent: Vec<usize> = (0..k).filter(|&i| rows[i].is_none()).map(|i| i + 1).collect();
        return Err(Error::NotSurjective(format!("colors {absent:?} never occur")));
    }
    let m = QuotientMatrix::new(rows.into_iter().map(Option::unwrap).collect())?;
    match scan_full(c, &m, len) {
        None => Ok(m),
        Some(w) => Err(Error::NotPerfect {
            rank: w.rank,
            color: w.color,
            observed: w.observed,
            expected: w.expected,
        }),
    }
}

fn check_expected(c: &Coloring, expected: &QuotientMatrix) -> Result<()> {
    if expected.k() != c.colors() as usize {
        return Err(Error::param(format!(
            "matrix has {} colors, coloring has {}",
            expected.k(),
            c.colors()
        )));
    }
    expected.check_row_sums(c.shape().degree())
}

/// Exhaustive check of every vertex against `expected`.
pub fn verify_full(c: &Coloring, expected: &QuotientMatrix, budget: u64) -> Result<VerifyReport> {
    check_expected(c, expected)?;
    let shape = c.shape();
    let len = shape
        .vertex_count_within(budget)
        .ok_or_else(|| shape.budget_error(budget))?;
    let c = c.materialize(budget)?;
    let violations = scan_full(&c, expected, len).into_iter().collect();
    Ok(VerifyReport {
        mode: VerifyMode::Full,
        matrix: expected.clone(),
        checked: len as u64,
        violations,
    })
}

/// Checks `samples` vertices drawn uniformly with replacement from `seed`.
pub fn verify_sampled(c: &Coloring, expected: &QuotientMatrix, samples: u64, seed: u64) -> Result<VerifyReport> {
    check_expected(c, expected)?;
    if samples == 0 {
        return Err(Error::param("samples must be positive"));
    }
    let shape = c.shape();
    let n = shape.n();
    let q = shape.q();
    let mut rng = SplitMix64::new(seed);
    let mut points = vec![0 as Symbol; n * samples as usize];
    for chunk in points.chunks_mut(n) {
        rng.fill_vertex(q, chunk);
    }
    let pows = powers(shape);
    let k = expected.k();
    let mut found: Vec<(usize, Violation)> = points
        .par_chunks(n)
        .enumerate()
        .filter_map(|(i, p)| {
            let mut v = p.to_vec();
            let rank = if c.dense_table().is_some() {
                rank_unchecked(&v, q) as usize
            } else {
                0
            };
            let mut buf = vec![0u64; k];
            check_vertex(c, expected, &mut v, rank, &pows, &mut buf).map(|mut w| {
                w.rank = rank_unchecked(&w.vertex, q);
                (i, w)
            })
        })
        .collect();
    found.sort_by_key(|(i, _)| *i);
    found.truncate(MAX_VIOLATIONS);
    Ok(VerifyReport {
        mode: VerifyMode::Sampled { samples, seed },
        matrix: expected.clone(),
        checked: samples,
        violations: found.into_iter().map(|(_, w)| w).collect(),
    })
}

/// Intersection numbers of the distance partition from a vertex of H(n,q).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DistanceParameters {
    shape: GraphShape,
}

impl DistanceParameters {
    pub fn new(shape: GraphShape) -> Self {
        DistanceParameters { shape }
    }

    /// Neighbors at distance j+1 of a vertex at distance j.
    pub fn b(&self, j: usize) -> u64 {
        (self.shape.n().saturating_sub(j) as u64) * (self.shape.q() as u64 - 1)
    }

    /// Neighbors at distance j.
    pub fn a(&self, j: usize) -> u64 {
        j as u64 * (self.shape.q() as u64 - 2)
    }

    /// Neighbors at distance j-1.
    pub fn c(&self, j: usize) -> u64 {
        j as u64
    }
}

/// `rows[l][j]`: vertices of color l+1 at distance j from the origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightDistribution {
    pub rows: Vec<Vec<BigUint>>,
}

impl WeightDistribution {
    pub fn colors(&self) -> usize {
        self.rows.len()
    }

    /// Count for color `l` (1-based) at distance `j`.
    pub fn get(&self, l: usize, j: usize) -> &BigUint {
        &self.rows[l - 1][j]
    }

    /// Rows as u64, if they fit.
    pub fn to_u64(&self) -> Option<Vec<Vec<u64>>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|x| x.to_u64()).collect())
            .collect()
    }
}

impl fmt::Display for WeightDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (l, row) in self.rows.iter().enumerate() {
            write!(f, "{}:", l + 1)?;
            for x in row {
                write!(f, " {x}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Weight distribution from a vertex of color `start` implied by the
/// quotient matrix alone, via
/// Σ_m W_m^j s_{m,l} = b_{j-1} W_l^{j-1} + a_j W_l^j + (j+1) W_l^{j+1}.
///
/// A negative or fractional value, or a nonzero remainder past distance n,
/// proves that no perfect coloring of `shape` has matrix `s`.
pub fn weight_distribution_recurrence(s: &QuotientMatrix, start: u8, shape: GraphShape) -> Result<WeightDistribution> {
    let k = s.k();
    s.check_row_sums(shape.degree())?;
    if start == 0 || start as usize > k {
        return Err(Error::param(format!("start color {start} outside 1..={k}")));
    }
    let n = shape.n();
    let dp = DistanceParameters::new(shape);
    let mut w: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); n + 2]; k];
    w[start as usize - 1][0] = BigInt::from(1u8);
    for j in 0..=n {
        for l in 0..k {
            let mut acc = BigInt::zero();
            for (m, row) in w.iter().enumerate() {
                acc += &row[j] * s.get(m, l);
            }
            acc -= &w[l][j] * dp.a(j);
            if j > 0 {
                acc -= &w[l][j - 1] * dp.b(j - 1);
            }
            let step = j + 1;
            if acc.is_negative() || !(&acc % step).is_zero() {
                return Err(Error::Infeasible(format!(
                    "color {} at distance {step}: {acc}/{step} is not a nonnegative integer",
                    l + 1
                )));
            }
            w[l][j + 1] = acc / step;
        }
    }
    if let Some(l) = (0..k).find(|&l| !w[l][n + 1].is_zero()) {
        return Err(Error::Infeasible(format!(
            "color {} has {} vertices beyond distance {n}",
            l + 1,
            w[l][n + 1]
        )));
    }
    Ok(WeightDistribution {
        rows: w
            .into_iter()
            .map(|r| r[..=n].iter().map(|x| x.to_biguint().unwrap()).collect())
            .collect(),
    })
}

/// Direct count of colored vertices by distance from `origin`.
pub fn weight_distribution_bruteforce(c: &Coloring, origin: &[Symbol], budget: u64) -> Result<WeightDistribution> {
    let shape = c.shape();
    shape.check(origin)?;
    let len = shape
        .vertex_count_within(budget)
        .ok_or_else(|| shape.budget_error(budget))?;
    let n = shape.n();
    let k = c.colors() as usize;
    let chunk = chunk_len(len);
    let counts = (0..len.div_ceil(chunk))
        .into_par_iter()
        .map(|ci| {
            let start = ci * chunk;
            let end = (start + chunk).min(len);
            let mut v = vec![0 as Symbol; n];
            unrank_into(start as u128, shape.q(), &mut v);
            let mut cnt = vec![0u64; k * (n + 1)];
            for _ in start..end {
                let d = v.iter().zip(origin).filter(|(a, b)| a != b).count();
                let col = c.color_of(&v) as usize;
                cnt[(col - 1) * (n + 1) + d] += 1;
                increment(&mut v, shape.q());
            }
            cnt
        })
        .reduce(
            || vec![0u64; k * (n + 1)],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(WeightDistribution {
        rows: counts
            .chunks(n + 1)
            .map(|r| r.iter().map(|&x| BigUint::from(x)).collect())
            .collect(),
    })
}

#[derive(Clone, Debug)]
pub struct FaceBalanceReport {
    /// Face dimension checked: n - (b+c)/q + 1.
    pub k_min: usize,
    pub faces_checked: u64,
    /// Color-1 vertices required in each face, if integral.
    pub expected: Option<u64>,
    /// First unbalanced face and its color-1 count.
    pub violation: Option<(Face, u64)>,
}

impl FaceBalanceReport {
    pub fn passed(&self) -> bool {
        self.expected.is_some() && self.violation.is_none()
    }

    pub fn note(&self) -> &'static str {
        "larger faces are unions of k_min-faces, so balance extends to every dimension ≥ k_min"
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Checks that every face of dimension n - (b+c)/q + 1 holds exactly
/// c/(b+c)·q^k vertices of color 1.
pub fn face_balance_check(c: &Coloring, bc: (u64, u64), budget: u64) -> Result<FaceBalanceReport> {
    if c.colors() != 2 {
        return Err(Error::param("face balance needs a 2-coloring"));
    }
    let shape = c.shape();
    let len = shape
        .vertex_count_within(budget)
        .ok_or_else(|| shape.budget_error(budget))?;
    let (n, q) = (shape.n(), shape.q());
    let (b, cc) = bc;
    if b == 0 || cc == 0 || (b + cc) % q as u64 != 0 {
        return Err(Error::param(format!("({b}, {cc}) is not a valid pair for q = {q}")));
    }
    let i = ((b + cc) / q as u64) as usize;
    if i > n {
        return Err(Error::param(format!("b + c = {} exceeds nq", b + cc)));
    }
    let k_min = n - i + 1;
    let face_size = (q as u64).pow(k_min as u32);
    let num = cc as u128 * face_size as u128;
    let expected = num
        .is_multiple_of((b + cc) as u128)
        .then(|| (num / (b + cc) as u128) as u64);
    let subsets = combinations(n, k_min);
    let faces_checked = binomial(n, k_min).to_u64().unwrap_or(u64::MAX) * (len as u64 / face_size);
    let Some(want) = expected else {
        return Ok(FaceBalanceReport {
            k_min,
            faces_checked: 0,
            expected: None,
            violation: None,
        });
    };
    let c = c.materialize(budget)?;
    let violation = subsets
        .par_iter()
        .enumerate()
        .filter_map(|(si, free)| {
            let fixed: Vec<usize> = (0..n).filter(|x| !free.contains(x)).collect();
            let mut counts = vec![0u64; len / face_size as usize];
            let mut v = vec![0 as Symbol; n];
            for _ in 0..len {
                if c.color_of(&v) == 1 {
                    let idx = fixed.iter().rev().fold(0usize, |a, &x| a * q as usize + v[x] as usize);
                    counts[idx] += 1;
                }
                increment(&mut v, q);
            }
            counts.iter().position(|&x| x != want).map(|idx| {
                let mut base = vec![0 as Symbol; n];
                let mut r = idx;
                for &x in &fixed {
                    base[x] = (r % q as usize) as Symbol;
                    r /= q as usize;
                }
                (si, Face::new(Vertex::new(base), free.clone()), counts[idx])
            })
        })
        .min_by_key(|(si, _, _)| *si)
        .map(|(_, f, x)| (f, x));
    Ok(FaceBalanceReport {
        k_min,
        faces_checked,
        expected: Some(want),
        violation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{hamming_perfect_coloring, mds2_coloring, tfold_perfect_coloring};
    use crate::hamming::weight;

    const B: u64 = 1 << 22;

    /// Neighbor counts via the public neighbor list, independent of the
    /// rank-offset fast path.
    fn slow_matrix(c: &Coloring) -> Option<Vec<Vec<u64>>> {
        let k = c.colors() as usize;
        let mut rows: Vec<Option<Vec<u64>>> = vec![None; k];
        for v in c.shape().vertices() {
            let mut row = vec![0u64; k];
            for u in c.shape().neighbors(&v).unwrap() {
                row[c.color_of(&u) as usize - 1] += 1;
            }
            let slot = &mut rows[c.color_of(&v) as usize - 1];
            match slot {
                None => *slot = Some(row),
                Some(r) if *r == row => {}
                Some(_) => return None,
            }
        }
        rows.into_iter().collect()
    }

    #[test]
    fn extract_examples() {
        let c = mds2_coloring(2, 3, 1).unwrap().to_coloring();
        assert_eq!(extract_quotient(&c, B).unwrap().rows(), vec![vec![0, 4], vec![2, 2]]);
        let h = hamming_perfect_coloring(2, 3).unwrap().to_coloring();
        let m = extract_quotient(&h, B).unwrap();
        assert_eq!(m.rows(), vec![vec![0, 8], vec![1, 7]]);
        assert_eq!(Some(m.rows()), slow_matrix(&h));
        let ones = Coloring::new(GraphShape::new(3, 2).unwrap(), 2, |_| 1);
        assert!(matches!(extract_quotient(&ones, B), Err(Error::NotSurjective(_))));
        let bad = Coloring::new(GraphShape::new(2, 3).unwrap(), 2, |v| {
            if v[0] == 0 && v[1] == 0 {
                1
            } else {
                2
            }
        });
        match extract_quotient(&bad, B) {
            Err(Error::NotPerfect { rank, .. }) => assert!(rank > 0),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn extract_matches_slow_path_on_tfold_codes() {
        for (t, r, q) in [(2, 2, 3), (3, 2, 2), (2, 1, 5), (4, 2, 3)] {
            let c = tfold_perfect_coloring(t, r, q).unwrap().to_coloring();
            let lazy = extract_quotient(&c, B).unwrap();
            assert_eq!(Some(lazy.rows()), slow_matrix(&c));
            let (b, cc) = lazy.bc().unwrap();
            assert_eq!(cc, t as u64);
            assert_eq!(b + cc, c.shape().degree() + 1);
        }
    }

    #[test]
    fn verify_full_pass_and_fail() {
        let h = hamming_perfect_coloring(2, 3).unwrap().to_coloring();
        let good = QuotientMatrix::two_color(8, 8, 1).unwrap();
        let r = verify_full(&h, &good, B).unwrap();
        assert!(r.passed());
        assert_eq!(r.checked, 81);
        let wrong = QuotientMatrix::new(vec![vec![1, 7], vec![1, 7]]).unwrap();
        let r = verify_full(&h, &wrong, B).unwrap();
        assert!(!r.passed());
        assert_eq!(r.violations[0].rank, 0);
        assert_eq!(r.violations[0].observed, vec![0, 8]);
        let three = QuotientMatrix::new(vec![vec![8, 0, 0], vec![0, 8, 0], vec![0, 0, 8]]).unwrap();
        assert!(verify_full(&h, &three, B).is_err());
    }

    #[test]
    fn sampled_detects_planted_defect_and_is_deterministic() {
        let h = hamming_perfect_coloring(2, 3)
            .unwrap()
            .to_coloring()
            .materialize(B)
            .unwrap();
        let m = QuotientMatrix::two_color(8, 8, 1).unwrap();
        let r = verify_sampled(&h, &m, 2000, 9).unwrap();
        assert!(r.passed());
        assert_eq!(r.note(), "necessary-condition only");
        let mut table = h.dense_table().unwrap().to_vec();
        table[40] = 3 - table[40];
        let broken = Coloring::from_dense(h.shape(), 2, table).unwrap();
        let a = verify_sampled(&broken, &m, 2000, 9).unwrap();
        let b = verify_sampled(&broken, &m, 2000, 9).unwrap();
        assert!(!a.passed());
        assert_eq!(a.violations, b.violations);
        assert!(!verify_full(&broken, &m, B).unwrap().passed());
        let lazy = Coloring::new(h.shape(), 2, {
            let h = h.clone();
            move |v| {
                if crate::hamming::rank_usize(v, 3) == 40 {
                    3 - h.color_of(v)
                } else {
                    h.color_of(v)
                }
            }
        });
        let c = verify_sampled(&lazy, &m, 2000, 9).unwrap();
        assert_eq!(a.violations, c.violations);
    }

    #[test]
    fn recurrence_examples() {
        let s = GraphShape::new(4, 3).unwrap();
        let m = QuotientMatrix::two_color(8, 8, 1).unwrap();
        let w = weight_distribution_recurrence(&m, 1, s).unwrap();
        assert_eq!(w.to_u64().unwrap(), vec![vec![1, 0, 0, 8, 0], vec![0, 8, 24, 24, 16]]);
        let m1 = QuotientMatrix::two_color(2, 2, 1).unwrap();
        let w = weight_distribution_recurrence(&m1, 1, GraphShape::new(1, 3).unwrap()).unwrap();
        assert_eq!(w.to_u64().unwrap(), vec![vec![1, 0], vec![0, 2]]);
        let whole = QuotientMatrix::new(vec![vec![12]]).unwrap();
        let w = weight_distribution_recurrence(&whole, 1, GraphShape::new(6, 3).unwrap()).unwrap();
        for j in 0..=6 {
            assert_eq!(w.get(1, j), &s6(j));
        }
    }

    fn s6(j: usize) -> BigUint {
        GraphShape::new(6, 3).unwrap().sphere_size(j).unwrap()
    }

    #[test]
    fn recurrence_flags_infeasible_matrices() {
        let s = GraphShape::new(4, 3).unwrap();
        // (5,1) satisfies the row sums but not the recurrence.
        let m = QuotientMatrix::two_color(8, 5, 1).unwrap();
        assert!(matches!(
            weight_distribution_recurrence(&m, 1, s),
            Err(Error::Infeasible(_))
        ));
        assert!(weight_distribution_recurrence(&m, 3, s).is_err());
    }

    #[test]
    fn recurrence_matches_bruteforce() {
        let cases = [
            hamming_perfect_coloring(2, 3).unwrap().to_coloring(),
            hamming_perfect_coloring(3, 2).unwrap().to_coloring(),
            hamming_perfect_coloring(2, 4).unwrap().to_coloring(),
            tfold_perfect_coloring(2, 2, 3).unwrap().to_coloring(),
            mds2_coloring(3, 4, 1).unwrap().to_coloring(),
        ];
        for c in cases {
            let m = extract_quotient(&c, B).unwrap();
            for v in [c.shape().zero(), c.shape().unrank(5).unwrap()] {
                let start = c.color_of(&v);
                let rec = weight_distribution_recurrence(&m, start, c.shape()).unwrap();
                let bf = weight_distribution_bruteforce(&c, &v, B).unwrap();
                assert_eq!(rec, bf, "{:?} from {v}", c.shape());
            }
        }
    }

    #[test]
    fn bruteforce_sums_and_translation_invariance() {
        let h = hamming_perfect_coloring(2, 3).unwrap().to_coloring();
        let code = hamming_perfect_coloring(2, 3).unwrap();
        let words: Vec<Vertex> = h.shape().vertices().filter(|v| code.contains(v)).take(3).collect();
        let w0 = weight_distribution_bruteforce(&h, &words[0], B).unwrap();
        for w in &words[1..] {
            assert_eq!(weight_distribution_bruteforce(&h, w, B).unwrap(), w0);
        }
        let v = h.shape().unrank(17).unwrap();
        let w = weight_distribution_bruteforce(&h, &v, B).unwrap();
        for j in 0..=4 {
            assert_eq!(w.get(1, j) + w.get(2, j), h.shape().sphere_size(j).unwrap());
        }
        assert_eq!(weight(&words[0]), 0);
    }

    #[test]
    fn face_balance_examples() {
        let h = hamming_perfect_coloring(2, 3).unwrap().to_coloring();
        let r = face_balance_check(&h, (8, 1), B).unwrap();
        assert_eq!((r.k_min, r.expected), (2, Some(1)));
        assert!(r.passed());
        assert_eq!(r.faces_checked, 6 * 9);
        let m = mds2_coloring(2, 3, 1).unwrap().to_coloring();
        let r = face_balance_check(&m, (4, 2), B).unwrap();
        assert_eq!((r.k_min, r.faces_checked), (1, 6));
        assert!(r.passed());
        let mut t = h.materialize(B).unwrap().dense_table().unwrap().to_vec();
        t[1] = 1;
        let broken = Coloring::from_dense(h.shape(), 2, t).unwrap();
        let r = face_balance_check(&broken, (8, 1), B).unwrap();
        let (face, count) = r.violation.unwrap();
        assert_eq!(count, 2);
        assert!(h
            .shape()
            .enumerate_face(&face)
            .unwrap()
            .iter()
            .any(|v| v.coords() == [1, 0, 0, 0]));
    }

    #[test]
    fn combinations_enumerate_subsets() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn distance_parameters_sum_to_degree() {
        for (n, q) in [(4, 3), (7, 2), (5, 6)] {
            let s = GraphShape::new(n, q).unwrap();
            let d = DistanceParameters::new(s);
            for j in 0..=n {
                assert_eq!(d.a(j) + d.b(j) + d.c(j), s.degree());
            }
        }
    }
}
