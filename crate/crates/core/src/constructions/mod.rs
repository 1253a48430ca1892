//! Constructions of perfect colorings and the recipe interpreter.

pub mod covering;
pub mod faces;
pub mod invasion;
pub mod splitting;

use std::sync::Arc;

use crate::algebra::quasigroup::IteratedSum;
use crate::codes::{mds2_coloring, tfold_perfect_coloring};
use crate::coloring::{default_budget, Coloring};
use crate::error::{Error, Result};
use crate::recipe::{FaceVariant, InvasionMode, Recipe};

pub use covering::{extend_dimension, multiply_alphabet, multiply_length};
pub use faces::{edge_partition_binary, line_partition_search, LineSearch};
pub use invasion::{g_coloring, invasion, Filler};
pub use splitting::{
    cached_hqq, flaass_improved, flaass_iterated, flaass_standard, invade_faces, invade_split, perfect_code_with_lines,
    split_i_base, split_i_faces, split_ii, LINE_SEARCH_TIMEOUT,
};

/// Intermediate colorings up to this many vertices are tabulated while
/// building, so that outer layers evaluate them by lookup.
const TABULATE_LIMIT: u64 = 1 << 20;

/// Builds the coloring described by `recipe`, with the recipe attached.
///
/// Parameters are checked symbolically first so that errors name the
/// offending node.
pub fn build(recipe: &Recipe) -> Result<Coloring> {
    recipe.predict()?;
    build_node(recipe, "")
}

fn build_node(recipe: &Recipe, parent: &str) -> Result<Coloring> {
    let path = if parent.is_empty() {
        recipe.name().to_string()
    } else {
        format!("{parent}/{}", recipe.name())
    };
    let child = || build_node(recipe.inner().unwrap(), &path);
    let located = |e: Error| match e {
        e @ (Error::RecipeInvalid { .. } | Error::BudgetExceeded { .. }) => e,
        e => Error::recipe(&path, e.to_string()),
    };
    let out = match recipe {
        Recipe::Mds2 { n, q, t } => mds2_coloring(*n, *q, *t).map(|c| c.to_coloring()),
        Recipe::Perfect { r, q, t } => tfold_perfect_coloring(*t, *r, *q).map(|c| c.to_coloring()),
        Recipe::Complement(_) => child()?.complement(),
        Recipe::Extend { t, .. } => extend_dimension(&child()?, *t),
        Recipe::MultLength { t, .. } => multiply_length(&child()?, *t),
        Recipe::MultAlphabet { p, .. } => multiply_alphabet(&child()?, *p),
        Recipe::Lines { color, .. } => with_lines(child()?, *color),
        Recipe::SplitIBase { seed, .. } => {
            let f = child()?;
            let r = Arc::new(IteratedSum::isotope(f.shape().n(), f.shape().q(), *seed));
            cached_hqq(f.shape().q()).and_then(|p| split_i_base(&f, &p, r))
        }
        Recipe::SplitIFaces { variant, k, seed, .. } => {
            let f = child()?;
            splitting::split_i_faces_seeded(&f, *variant, *k, *seed)
        }
        Recipe::Invasion { mode, inner } => {
            let predicted = inner.predict()?.matrix;
            let q = predicted.k();
            match *mode {
                InvasionMode::Split { t1, t2 } => {
                    let m = (predicted.get(q / 2, 0) - predicted.get(0, 0)) as usize;
                    invade_split(&child()?, m, t1, t2)
                }
                InvasionMode::Faces { t, l } => {
                    let qq = q - 1;
                    let alpha = if qq > 1 { predicted.get(0, 1) } else { 0 };
                    let m = (predicted.get(qq, 0) - alpha) as usize;
                    match inner.as_ref() {
                        Recipe::SplitIFaces {
                            variant: FaceVariant::DoublePrime,
                            k,
                            seed,
                            inner: grand,
                        } if l == 2 => {
                            let f = build_node(grand, &format!("{path}/{}", inner.name()))?;
                            splitting::double_prime_invasion(&f, *k, *seed, m, t)
                        }
                        _ => invade_faces(&child()?, m, t, l),
                    }
                }
            }
        }
        Recipe::FlaassStd { t1, t2, .. } => flaass_standard(&child()?, *t1, *t2, 0),
        Recipe::FlaassImpr { variant, t, k, .. } => flaass_improved(&child()?, *variant, *t, *k, 0),
        Recipe::FlaassIter { ts, k, .. } => flaass_iterated(&child()?, ts, *k, 0),
        Recipe::Split2 { q, p, t } => perfect_code_with_lines(*q).and_then(|b| split_ii(&b, *p, *t)),
    }
    .map_err(located)?;
    let out = if out
        .shape()
        .vertex_count_within(TABULATE_LIMIT.min(default_budget()))
        .is_some()
    {
        out.materialize(default_budget())?
    } else {
        out
    };
    Ok(out.with_recipe(recipe.clone()))
}

/// Attaches a line partition of `color`, keeping any existing partition
/// into faces of dimension at least 1.
fn with_lines(c: Coloring, color: u8) -> Result<Coloring> {
    if c.face_partition(color).is_some_and(|fp| fp.dim() >= 1) {
        return Ok(c);
    }
    let budget = default_budget();
    let fp = if c.shape().q() == 2 {
        edge_partition_binary(&c, color, budget)?
    } else {
        match line_partition_search(&c, color, LINE_SEARCH_TIMEOUT, budget)? {
            LineSearch::Found(fp) => fp,
            LineSearch::NotFound => return Err(Error::NoPartition(format!("color {color} has no line partition"))),
            LineSearch::Timeout => {
                return Err(Error::NoPartition(format!(
                    "line search for color {color} timed out; existence is unknown"
                )))
            }
        }
    };
    Ok(c.with_face_partition(fp))
}
