//! The invasion h(x,y) = g_{f(x)}(y) and the t-fold MDS fillers G^i_t.

use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::hamming::{GraphShape, Symbol};

/// What replaces each vertex of one color of the outer coloring.
#[derive(Clone, Debug)]
pub enum Filler {
    /// Every vertex of H(m,q) gets this color; the only option when m = 0.
    Solid(u8),
    Coloring(Coloring),
}

impl Filler {
    fn color(&self, y: &[Symbol]) -> u8 {
        match self {
            Filler::Solid(c) => *c,
            Filler::Coloring(g) => g.color_of(y),
        }
    }
}

/// G^i_t on H(m,q): color 1 on M^i ∪ … ∪ M^{i+t-1} (indices mod q), where
/// M^j = {y : Σy ≡ j-1}. For m = 0 it is solid 1 if i ≤ t and solid 2 otherwise.
///
/// `i` runs over 1..=q.
pub fn g_coloring(i: u32, t: u32, m: usize, q: u32) -> Result<Filler> {
    if i == 0 || i > q || t > q {
        return Err(Error::param(format!("G^{i}_{t} is undefined for q = {q}")));
    }
    if m == 0 {
        return Ok(Filler::Solid(if i <= t { 1 } else { 2 }));
    }
    if t == 0 {
        return Ok(Filler::Solid(2));
    }
    if t == q {
        return Ok(Filler::Solid(1));
    }
    let shape = GraphShape::new(m, q)?;
    let shift = i - 1;
    Ok(Filler::Coloring(Coloring::new(shape, 2, move |y| {
        let s = y.iter().map(|&x| x as u32).sum::<u32>() % q;
        if (s + q - shift) % q < t {
            1
        } else {
            2
        }
    })))
}

/// h(x,y) = g_{f(x)}(y) on H(n+m,q).
///
/// Perfectness is only guaranteed under the hypotheses on the quotient
/// matrix of `f` checked by the callers.
pub fn invasion(f: &Coloring, m: usize, fillers: Vec<Filler>) -> Result<Coloring> {
    let shape = f.shape();
    if fillers.len() != f.colors() as usize {
        return Err(Error::param(format!(
            "{} fillers for a {}-coloring",
            fillers.len(),
            f.colors()
        )));
    }
    for g in &fillers {
        match g {
            Filler::Solid(c) if *c == 1 || *c == 2 => {}
            Filler::Solid(c) => return Err(Error::param(format!("solid color {c} is not 1 or 2"))),
            Filler::Coloring(_) if m == 0 => {
                return Err(Error::param("fillers of H(0,q) must be solid"));
            }
            Filler::Coloring(g) => {
                if g.shape() != GraphShape::new(m, shape.q())? || g.colors() != 2 {
                    return Err(Error::param(format!(
                        "filler on {} with {} colors, expected a 2-coloring of H({m},{})",
                        g.shape(),
                        g.colors(),
                        shape.q()
                    )));
                }
            }
        }
    }
    let n = shape.n();
    let out_shape = GraphShape::new(n + m, shape.q())?;
    let f = f.clone();
    Ok(Coloring::new(out_shape, 2, move |v| {
        let (x, y) = v.split_at(n);
        fillers[f.color_of(x) as usize - 1].color(y)
    }))
}
