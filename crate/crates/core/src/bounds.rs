//! Necessary conditions on (b,c)-colorings and lower bounds on the length.

use std::fmt;

use num_integer::Integer;

use crate::algebra::field::{prime_factors, prime_power};
use crate::error::{Error, Result};

/// (b, c) oriented so that b ≥ c, with the reduced pair b′ = b/g, c′ = c/g.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Params2 {
    pub q: u32,
    pub b: u64,
    pub c: u64,
}

impl Params2 {
    /// Accepts either orientation and stores b ≥ c.
    pub fn new(q: u32, b: u64, c: u64) -> Result<Self> {
        if q < 2 {
            return Err(Error::param(format!("q = {q} must be at least 2")));
        }
        if b == 0 || c == 0 {
            return Err(Error::param(format!("b = {b} and c = {c} must be positive")));
        }
        Ok(Params2 {
            q,
            b: b.max(c),
            c: b.min(c),
        })
    }

    pub fn gcd(&self) -> u64 {
        self.b.gcd(&self.c)
    }

    /// (b′, c′).
    pub fn reduced(&self) -> (u64, u64) {
        let g = self.gcd();
        (self.b / g, self.c / g)
    }

    pub fn reduced_sum(&self) -> u64 {
        let (b, c) = self.reduced();
        b + c
    }
}

impl fmt::Display for Params2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.b, self.c)
    }
}

/// i = (b+c)/q when q divides b+c; the main eigenvalue is then n(q-1) - qi.
pub fn eigenvalue_condition(q: u32, b: u64, c: u64) -> Option<u64> {
    let s = b + c;
    s.is_multiple_of(q as u64).then(|| s / q as u64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Divisibility {
    /// `prime` divides b′+c′ but not q.
    Inadmissible { prime: u64 },
    /// (b′+c′) | q^k for minimal k, forcing n ≥ (b+c)/q + k - 1.
    Bound { k: u32, n: u64 },
}

/// Minimal k with (b′+c′) | q^k and the implied bound on n.
pub fn divisibility_bound(q: u32, b: u64, c: u64) -> Result<Divisibility> {
    let p = Params2::new(q, b, c)?;
    let i = eigenvalue_condition(q, p.b, p.c)
        .ok_or_else(|| Error::param(format!("q = {q} does not divide b + c = {}", b + c)))?;
    let s = p.reduced_sum();
    let mut k = 0;
    for prime in prime_factors(s) {
        let vq = valuation(q as u64, prime);
        if vq == 0 {
            return Ok(Divisibility::Inadmissible { prime });
        }
        k = k.max(valuation(s, prime).div_ceil(vq));
    }
    Ok(Divisibility::Bound { k, n: i + k as u64 - 1 })
}

fn valuation(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

/// Necessary condition for c = 1: (q-1) | b, and b + 1 a power of q when q
/// is a prime power.
pub fn c1_condition(q: u32, b: u64) -> bool {
    let q = q as u64;
    if !b.is_multiple_of(q - 1) {
        return false;
    }
    if prime_power(q).is_none() {
        return true;
    }
    let mut x = b + 1;
    while x.is_multiple_of(q) {
        x /= q;
    }
    x == 1
}

/// n ≥ ⌈3(b+c)/4⌉ for b ≠ c in the hypercube.
pub fn fdf_bound(q: u32, b: u64, c: u64) -> Option<u64> {
    (q == 2 && b != c).then(|| (3 * (b + c)).div_ceil(4))
}

/// ⌈max(b,c)/(q-1)⌉: every vertex has b or c neighbors of the other color.
pub fn degree_bound(q: u32, b: u64, c: u64) -> u64 {
    b.max(c).div_ceil(q as u64 - 1)
}

/// Advisory only: the conjectured bound n ≥ (q+1)(b+c)/q² for b′+c′ > q.
pub fn conjectured_bound(q: u32, b: u64, c: u64) -> Option<u64> {
    let p = Params2::new(q, b, c).ok()?;
    let q = q as u64;
    (q >= 3 && p.reduced_sum() > q).then(|| ((q + 1) * (b + c)).div_ceil(q * q))
}

/// A known nonexistence at one exact length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionRecord {
    pub q: u32,
    pub b: u64,
    pub c: u64,
    pub n: u64,
    pub tag: String,
}

/// Parses `q b c n tag` lines; `#` starts a comment.
pub fn parse_exceptions(text: &str) -> Result<Vec<ExceptionRecord>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let perr = |msg: String| Error::Parse { line: i + 1, msg };
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 5 {
            return Err(perr(format!("expected `q b c n tag`, got {} fields", fields.len())));
        }
        let num = |s: &str| s.parse::<u64>().map_err(|_| perr(format!("'{s}' is not a number")));
        let p =
            Params2::new(num(fields[0])? as u32, num(fields[1])?, num(fields[2])?).map_err(|e| perr(e.to_string()))?;
        out.push(ExceptionRecord {
            q: p.q,
            b: p.b,
            c: p.c,
            n: num(fields[3])?,
            tag: fields[4].to_string(),
        });
    }
    Ok(out)
}

/// The records shipped with the library.
pub fn default_exceptions() -> Vec<ExceptionRecord> {
    parse_exceptions(include_str!("../data/exceptions.txt")).expect("bundled exception data parses")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reason {
    Degree(u64),
    Divisibility { k: u32, n: u64 },
    Fdf(u64),
    Exception { n: u64, tag: String },
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reason::Degree(n) => write!(f, "degree: n ≥ {n}"),
            Reason::Divisibility { k, n } => write!(f, "divisibility (k = {k}): n ≥ {n}"),
            Reason::Fdf(n) => write!(f, "correlation immunity: n ≥ {n}"),
            Reason::Exception { n, tag } => write!(f, "exception {tag}: n ≠ {n}"),
        }
    }
}

/// The best lower bound and every bound that went into it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerBound {
    pub value: u64,
    pub reasons: Vec<Reason>,
}

impl LowerBound {
    pub fn degree(&self) -> u64 {
        self.reasons
            .iter()
            .find_map(|r| match r {
                Reason::Degree(n) => Some(*n),
                _ => None,
            })
            .unwrap_or(0)
    }

    /// (k, (b+c)/q + k - 1).
    pub fn divisibility(&self) -> Option<(u32, u64)> {
        self.reasons.iter().find_map(|r| match r {
            Reason::Divisibility { k, n } => Some((*k, *n)),
            _ => None,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Obstruction {
    /// q does not divide b + c.
    Eigenvalue,
    /// A prime divides b′+c′ but not q.
    PrimeDivisor(u64),
    /// c = 1 and the 1-perfect code condition fails.
    C1,
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obstruction::Eigenvalue => write!(f, "q does not divide b + c"),
            Obstruction::PrimeDivisor(p) => write!(f, "{p} divides b′+c′ but not q"),
            Obstruction::C1 => write!(f, "c = 1 but b fails the 1-perfect code condition"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Admissibility {
    Inadmissible(Vec<Obstruction>),
    Bounded(LowerBound),
}

impl Admissibility {
    pub fn lower_bound(&self) -> Option<&LowerBound> {
        match self {
            Admissibility::Bounded(lb) => Some(lb),
            Admissibility::Inadmissible(_) => None,
        }
    }
}

/// All necessary conditions, with the bundled exception records.
pub fn lower_bound(q: u32, b: u64, c: u64) -> Result<Admissibility> {
    lower_bound_with(q, b, c, &default_exceptions())
}

/// As [`lower_bound`] with explicit exception records. A record raises the
/// bound to n+1 only when n equals the bound reached so far.
pub fn lower_bound_with(q: u32, b: u64, c: u64, exceptions: &[ExceptionRecord]) -> Result<Admissibility> {
    let p = Params2::new(q, b, c)?;
    let mut obstructions = Vec::new();
    let div = match eigenvalue_condition(q, p.b, p.c) {
        None => {
            obstructions.push(Obstruction::Eigenvalue);
            None
        }
        Some(_) => match divisibility_bound(q, p.b, p.c)? {
            Divisibility::Inadmissible { prime } => {
                obstructions.push(Obstruction::PrimeDivisor(prime));
                None
            }
            Divisibility::Bound { k, n } => Some((k, n)),
        },
    };
    if p.c == 1 && !c1_condition(q, p.b) {
        obstructions.push(Obstruction::C1);
    }
    if !obstructions.is_empty() {
        return Ok(Admissibility::Inadmissible(obstructions));
    }
    let (k, kn) = div.expect("divisibility passed");
    let degree = degree_bound(q, p.b, p.c);
    let mut reasons = vec![Reason::Degree(degree), Reason::Divisibility { k, n: kn }];
    let mut value = degree.max(kn);
    if let Some(f) = fdf_bound(q, p.b, p.c) {
        reasons.push(Reason::Fdf(f));
        value = value.max(f);
    }
    let mut matching: Vec<&ExceptionRecord> = exceptions
        .iter()
        .filter(|e| (e.q, e.b, e.c) == (p.q, p.b, p.c))
        .collect();
    matching.sort_by_key(|e| e.n);
    for e in matching {
        if e.n == value {
            value += 1;
            reasons.push(Reason::Exception {
                n: e.n,
                tag: e.tag.clone(),
            });
        }
    }
    Ok(Admissibility::Bounded(LowerBound { value, reasons }))
}

/// max{b/(q-1), (b+c)/q + k - 1} ≤ n₀ ≤ (b+c-gcd(b,c))/(q-1) for prime
/// power q and b′+c′ = q^k.
pub fn threshold_bounds_prime_power(q: u32, b: u64, c: u64) -> Result<(u64, u64)> {
    if prime_power(q as u64).is_none() {
        return Err(Error::param(format!("q = {q} is not a prime power")));
    }
    let p = Params2::new(q, b, c)?;
    let mut s = p.reduced_sum();
    while s % q as u64 == 0 {
        s /= q as u64;
    }
    if s != 1 || eigenvalue_condition(q, p.b, p.c).is_none() {
        return Err(Error::param(format!(
            "b′+c′ = {} is not a power of q = {q}",
            p.reduced_sum()
        )));
    }
    let Divisibility::Bound { n, .. } = divisibility_bound(q, p.b, p.c)? else {
        unreachable!("b′+c′ is a power of q");
    };
    let lb = degree_bound(q, p.b, p.c).max(n);
    let ub = (p.b + p.c - p.gcd()) / (q as u64 - 1);
    Ok((lb, ub))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lb(q: u32, b: u64, c: u64) -> LowerBound {
        lower_bound(q, b, c)
            .unwrap()
            .lower_bound()
            .cloned()
            .expect("admissible")
    }

    #[test]
    fn eigenvalue_examples() {
        assert_eq!(eigenvalue_condition(3, 2, 1), Some(1));
        assert_eq!(eigenvalue_condition(3, 2, 2), None);
        assert_eq!(eigenvalue_condition(6, 7, 5), Some(2));
    }

    #[test]
    fn divisibility_examples() {
        assert_eq!(divisibility_bound(3, 5, 4).unwrap(), Divisibility::Bound { k: 2, n: 4 });
        assert_eq!(
            divisibility_bound(4, 21, 3).unwrap(),
            Divisibility::Bound { k: 2, n: 7 }
        );
        assert_eq!(
            divisibility_bound(3, 7, 5).unwrap(),
            Divisibility::Inadmissible { prime: 2 }
        );
        assert!(divisibility_bound(3, 2, 2).is_err());
    }

    #[test]
    fn c1_examples() {
        assert!(c1_condition(3, 8));
        assert!(!c1_condition(4, 7));
        assert!(c1_condition(6, 35));
        assert!(!c1_condition(6, 11));
        assert!(c1_condition(2, 7));
        assert!(!c1_condition(2, 5));
    }

    #[test]
    fn fdf_examples() {
        assert_eq!(fdf_bound(2, 5, 3), Some(6));
        assert_eq!(fdf_bound(2, 3, 1), Some(3));
        assert_eq!(fdf_bound(2, 2, 2), None);
        assert_eq!(fdf_bound(3, 5, 4), None);
    }

    #[test]
    fn lower_bound_examples() {
        let l = lb(3, 16, 2);
        assert_eq!((l.value, l.degree(), l.divisibility()), (8, 8, Some((2, 7))));
        assert_eq!(lb(6, 21, 3).value, 6);
        let l = lb(3, 14, 4);
        assert_eq!((l.degree(), l.divisibility().unwrap().1, l.value), (7, 7, 8));
        assert!(matches!(l.reasons.last(), Some(Reason::Exception { n: 7, .. })));
        assert_eq!(lb(6, 35, 1).value, 8);
        assert_eq!(lb(3, 4, 14).value, 8);
        assert_eq!(
            lower_bound(3, 7, 5).unwrap(),
            Admissibility::Inadmissible(vec![Obstruction::PrimeDivisor(2)])
        );
        assert_eq!(
            lower_bound(4, 7, 1).unwrap(),
            Admissibility::Inadmissible(vec![Obstruction::C1])
        );
        assert_eq!(
            lower_bound(3, 2, 2).unwrap(),
            Admissibility::Inadmissible(vec![Obstruction::Eigenvalue])
        );
    }

    #[test]
    fn exceptions_apply_only_at_the_bound() {
        let far = parse_exceptions("3 14 4 9 elsewhere\n").unwrap();
        assert_eq!(
            lower_bound_with(3, 14, 4, &far).unwrap().lower_bound().unwrap().value,
            7
        );
        let chain = parse_exceptions("3 14 4 8 second\n3 14 4 7 first # comment\n").unwrap();
        assert_eq!(
            lower_bound_with(3, 14, 4, &chain).unwrap().lower_bound().unwrap().value,
            9
        );
        assert!(matches!(
            parse_exceptions("3 14 4\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_exceptions("\n3 x 4 7 t\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert_eq!(default_exceptions().len(), 2);
    }

    #[test]
    fn threshold_examples() {
        assert_eq!(threshold_bounds_prime_power(3, 5, 4).unwrap(), (4, 4));
        assert_eq!(threshold_bounds_prime_power(3, 6, 3).unwrap(), (3, 3));
        assert_eq!(threshold_bounds_prime_power(3, 8, 1).unwrap(), (4, 4));
        assert!(threshold_bounds_prime_power(6, 3, 3).is_err());
        assert!(threshold_bounds_prime_power(4, 21, 3).is_err());
    }

    #[test]
    fn conjecture_is_advisory() {
        assert_eq!(conjectured_bound(3, 14, 13), Some(12));
        assert_eq!(conjectured_bound(3, 6, 3), None);
        assert_eq!(lb(3, 14, 13).value, 11);
    }

    /// Minimal k with m | q^k by repeated multiplication, or None.
    fn k_by_powers(q: u64, m: u64) -> Option<u32> {
        let mut x = 1u128 % m as u128;
        for k in 0..64 {
            if x == 0 {
                return Some(k);
            }
            x = x * q as u128 % m as u128;
        }
        None
    }

    proptest! {
        #[test]
        fn divisibility_matches_power_oracle(q in 2u32..=8, s in 1u64..=20, b_frac in 0.0f64..1.0) {
            let total = s * q as u64;
            let b = ((total - 1) as f64 * b_frac) as u64 + 1;
            let c = total - b;
            prop_assume!(c >= 1);
            let p = Params2::new(q, b, c).unwrap();
            match (divisibility_bound(q, b, c).unwrap(), k_by_powers(q as u64, p.reduced_sum())) {
                (Divisibility::Inadmissible { .. }, None) => {}
                (Divisibility::Bound { k, n }, Some(k2)) => {
                    prop_assert_eq!(k, k2);
                    prop_assert_eq!(n, s + k as u64 - 1);
                }
                (d, k) => prop_assert!(false, "{:?} vs {:?}", d, k),
            }
        }

        #[test]
        fn scaling_keeps_k(q in 2u32..=8, b in 1u64..=30, c in 1u64..=30, t in 1u64..=5) {
            prop_assume!((b + c) % q as u64 == 0);
            let k = |d: Divisibility| match d {
                Divisibility::Bound { k, .. } => Some(k),
                Divisibility::Inadmissible { .. } => None,
            };
            prop_assert_eq!(
                k(divisibility_bound(q, b, c).unwrap()),
                k(divisibility_bound(q, t * b, t * c).unwrap())
            );
        }

        #[test]
        fn lower_bound_dominates_components(q in 2u32..=8, b in 1u64..=60, c in 1u64..=60) {
            if let Admissibility::Bounded(l) = lower_bound(q, b, c).unwrap() {
                prop_assert!(l.value >= degree_bound(q, b, c));
                prop_assert!(l.value >= l.divisibility().unwrap().1);
                if let Some(f) = fdf_bound(q, b, c) {
                    prop_assert!(l.value >= f);
                }
            }
        }

        #[test]
        fn threshold_interval_is_nonempty(q in prop::sample::select(vec![2u32, 3, 4, 5, 7, 8, 9]), b in 1u64..=80, c in 1u64..=80) {
            if let Ok((lo, hi)) = threshold_bounds_prime_power(q, b, c) {
                prop_assert!(lo <= hi, "q={} ({},{}) {}..{}", q, b, c, lo, hi);
            }
        }
    }
}
