//! Colorings pulled back along the three covering maps: dummy coordinates,
//! block sums, and reduction of the alphabet.

use std::sync::Arc;

use crate::coloring::{Coloring, FacePartition};
use crate::error::{Error, Result};
use crate::hamming::{GraphShape, Symbol, MAX_Q};

/// f(x_1..x_n) on H(n+t,q); the quotient matrix gains t(q-1) on the diagonal.
///
/// Every color class is partitioned into faces that add the t new
/// coordinates to the free set of any existing face partition.
pub fn extend_dimension(f: &Coloring, t: usize) -> Result<Coloring> {
    if t == 0 {
        return Err(Error::param("extend_dimension needs t ≥ 1"));
    }
    let shape = f.shape();
    let n = shape.n();
    let out_shape = GraphShape::new(n + t, shape.q())?;
    let inner = f.clone();
    let mut out = Coloring::new(out_shape, f.colors(), move |v| inner.color_of(&v[..n]));
    for color in 1..=f.colors() {
        let fp = match f.face_partition(color) {
            Some(fp) => {
                let dirs = fp.dirs_fn();
                FacePartition::new(color, fp.dim() + t, move |v| {
                    let mut d = dirs(&v[..n]);
                    d.extend(n..n + t);
                    d
                })
            }
            None => FacePartition::new(color, t, move |_| (n..n + t).collect()),
        };
        out = out.with_face_partition(fp);
    }
    Ok(out)
}

/// f applied to the block sums (x_{ti}+…+x_{ti+t-1}) mod q; quotient tS.
pub fn multiply_length(f: &Coloring, t: usize) -> Result<Coloring> {
    if t == 0 {
        return Err(Error::param("multiply_length needs t ≥ 1"));
    }
    let shape = f.shape();
    let (n, q) = (shape.n(), shape.q());
    let out_shape = GraphShape::new(n * t, q)?;
    let inner = f.clone();
    let sums = move |v: &[Symbol]| -> Vec<Symbol> {
        v.chunks(t)
            .map(|b| (b.iter().map(|&s| s as u32).sum::<u32>() % q) as Symbol)
            .collect()
    };
    let sums = Arc::new(sums);
    let s2 = sums.clone();
    let mut out = Coloring::new(out_shape, f.colors(), move |v| inner.color_of(&s2(v)));
    for fp in f.face_partitions() {
        let dirs = fp.dirs_fn();
        let s3 = sums.clone();
        out = out.with_face_partition(FacePartition::new(fp.color(), fp.dim() * t, move |v| {
            dirs(&s3(v)).into_iter().flat_map(|i| i * t..(i + 1) * t).collect()
        }));
    }
    Ok(out)
}

/// f(y mod q) on H(n,pq); quotient pS + n(p-1)I.
pub fn multiply_alphabet(f: &Coloring, p: u32) -> Result<Coloring> {
    if p == 0 {
        return Err(Error::param("multiply_alphabet needs p ≥ 1"));
    }
    let shape = f.shape();
    let q = shape.q();
    let big = q
        .checked_mul(p)
        .filter(|&x| x <= MAX_Q)
        .ok_or_else(|| Error::param(format!("alphabet {q}·{p} exceeds {MAX_Q}")))?;
    let out_shape = GraphShape::new(shape.n(), big)?;
    let reduce = move |v: &[Symbol]| -> Vec<Symbol> { v.iter().map(|&s| (s as u32 % q) as Symbol).collect() };
    let inner = f.clone();
    let mut out = Coloring::new(out_shape, f.colors(), move |v| inner.color_of(&reduce(v)));
    for fp in f.face_partitions() {
        let dirs = fp.dirs_fn();
        out = out.with_face_partition(FacePartition::new(fp.color(), fp.dim(), move |v| dirs(&reduce(v))));
    }
    Ok(out)
}
