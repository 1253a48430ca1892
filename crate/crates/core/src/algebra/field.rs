//! Arithmetic in GF(p^s) on integer labels.
//!
//! An element is labeled by the integer whose base-p digits are its polynomial
//! coefficients, constant term least significant.

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u64 = 1 << 16;

#[derive(Clone, Debug)]
pub struct FiniteField {
    p: u32,
    s: u32,
    /// Monic modulus, coefficients from the constant term up; length s+1.
    modulus: Vec<u32>,
    order: u32,
    tables: Option<Tables>,
}

#[derive(Clone, Debug)]
struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Returns (p, s) with q = p^s when q is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut s = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        s += 1;
    }
    (rest == 1).then_some((p, s))
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn poly_rem(mut a: Vec<u32>, m: &[u32], p: u32) -> Vec<u32> {
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while a.len() > dm {
        let top = a.pop().unwrap();
        if top == 0 {
            continue;
        }
        let f = top * lead_inv % p;
        let shift = a.len() - dm;
        for (i, &c) in m[..dm].iter().enumerate() {
            a[shift + i] = (a[shift + i] + p - f * c % p) % p;
        }
    }
    a
}

fn inv_mod(a: u32, p: u32) -> u32 {
    (1..p).find(|x| a * x % p == 1).expect("nonzero residue mod a prime")
}

fn is_irreducible(m: &[u32], p: u32) -> bool {
    let deg = m.len() - 1;
    if deg <= 1 {
        return true;
    }
    // Trial division by every monic polynomial of degree 1..=deg/2.
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for low in 0..count {
            let mut div = digits(low, p, d);
            div.push(1);
            if poly_rem(m.to_vec(), &div, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn digits(mut x: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((x % p as u64) as u32);
        x /= p as u64;
    }
    out
}

/// Builds GF(p^s) with the least monic irreducible modulus of degree s.
///
/// Moduli are ordered by the integer whose base-p digits are the coefficients,
/// leading coefficient most significant; for GF(4) this gives x^2+x+1.
pub fn gf_make(p: u64, s: u32) -> Result<FiniteField> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if s == 0 {
        return Err(Error::param("field exponent must be positive"));
    }
    let order = p
        .checked_pow(s)
        .filter(|&o| o <= MAX_FIELD_ORDER)
        .ok_or(Error::FieldTooLarge(p.saturating_pow(s)))?;
    let p32 = p as u32;
    let s_us = s as usize;
    let count = order;
    let modulus = (0..count)
        .map(|low| {
            let mut m = digits(low, p32, s_us);
            m.push(1);
            m
        })
        .find(|m| is_irreducible(m, p32))
        .ok_or_else(|| Error::Internal(format!("no irreducible of degree {s} over GF({p})")))?;
    let mut f = FiniteField {
        p: p32,
        s,
        modulus,
        order: order as u32,
        tables: None,
    };
    if order <= 256 {
        let o = order as u32;
        let mut add = vec![0; (o * o) as usize];
        let mut mul = vec![0; (o * o) as usize];
        for a in 0..o {
            for b in 0..o {
                add[(a * o + b) as usize] = f.add_slow(a, b);
                mul[(a * o + b) as usize] = f.mul_slow(a, b);
            }
        }
        f.tables = Some(Tables { add, mul });
    }
    Ok(f)
}

/// GF(q) for a prime power q.
pub fn gf_of_order(q: u64) -> Result<FiniteField> {
    match prime_power(q) {
        Some((p, s)) => gf_make(p, s),
        None => Err(Error::Unsupported(format!("{q} is not a prime power"))),
    }
}

impl FiniteField {
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn exponent(&self) -> u32 {
        self.s
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Modulus coefficients from the constant term up.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    fn to_poly(&self, a: u32) -> Vec<u32> {
        digits(a as u64, self.p, self.s as usize)
    }

    fn encode_poly(&self, c: &[u32]) -> u32 {
        c.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    fn add_slow(&self, a: u32, b: u32) -> u32 {
        let (x, y) = (self.to_poly(a), self.to_poly(b));
        let z: Vec<u32> = x.iter().zip(&y).map(|(u, v)| (u + v) % self.p).collect();
        self.encode_poly(&z)
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let (x, y) = (self.to_poly(a), self.to_poly(b));
        let mut prod = vec![0u32; 2 * self.s as usize];
        for (i, &u) in x.iter().enumerate() {
            for (j, &v) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + u * v) % self.p;
            }
        }
        let mut r = poly_rem(prod, &self.modulus, self.p);
        r.resize(self.s as usize, 0);
        self.encode_poly(&r)
    }

    fn check(&self, a: u32) {
        assert!(a < self.order, "label {a} outside GF({})", self.order);
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.check(a);
        self.check(b);
        match &self.tables {
            Some(t) => t.add[(a * self.order + b) as usize],
            None => self.add_slow(a, b),
        }
    }

    pub fn neg(&self, a: u32) -> u32 {
        self.check(a);
        let x: Vec<u32> = self.to_poly(a).iter().map(|&d| (self.p - d) % self.p).collect();
        self.encode_poly(&x)
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.check(a);
        self.check(b);
        match &self.tables {
            Some(t) => t.mul[(a * self.order + b) as usize],
            None => self.mul_slow(a, b),
        }
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse, a^(q-2).
    pub fn inv(&self, a: u32) -> Result<u32> {
        self.check(a);
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.order as u64 - 2))
    }
}

pub fn gf_add(f: &FiniteField, a: u32, b: u32) -> u32 {
    f.add(a, b)
}

pub fn gf_mul(f: &FiniteField, a: u32, b: u32) -> u32 {
    f.mul(a, b)
}

pub fn gf_inv(f: &FiniteField, a: u32) -> Result<u32> {
    f.inv(a)
}
