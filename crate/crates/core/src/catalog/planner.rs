//! Bounded forward search over recipes for small-length witnesses.
//!
//! Items are recipes with known output (q, b, c, n) and face-partition
//! dimensions. Starting from Hamming codes and alphabet splits, each round
//! applies one more construction to the items found so far. Per parameter
//! triple and table column, only items not dominated in (n, face dimensions,
//! depth) are kept.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::algebra::field::prime_power;
use crate::recipe::Recipe;

use super::Column;

/// Default number of construction layers.
pub const DEFAULT_DEPTH: usize = 4;

/// Largest hypercube in which an edge partition is built by matching.
const MAX_MATCHING_N: usize = 24;

/// A recipe and the length of the graph it colors.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Witness {
    pub n: usize,
    pub recipe: Recipe,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Item {
    q: u32,
    b: u64,
    c: u64,
    n: usize,
    dims: [usize; 2],
    depth: usize,
    column: Option<Column>,
    recipe: Recipe,
}

type Key = (u32, u64, u64, Option<Column>);

impl Item {
    fn from_recipe(recipe: Recipe) -> Option<Item> {
        let p = recipe.predict().ok()?;
        let (b, c) = p.bc()?;
        Some(Item {
            q: p.shape.q(),
            b,
            c,
            n: p.shape.n(),
            dims: [p.face_dims[0], p.face_dims[1]],
            depth: recipe.depth(),
            column: column_of(&recipe),
            recipe,
        })
    }

    fn key(&self) -> Key {
        (self.q, self.b, self.c, self.column)
    }

    fn complement(&self) -> Item {
        Item {
            b: self.c,
            c: self.b,
            dims: [self.dims[1], self.dims[0]],
            recipe: self.recipe.clone().complement(),
            ..self.clone()
        }
    }

    fn dominates(&self, other: &Item) -> bool {
        self.n <= other.n && self.dims[0] >= other.dims[0] && self.dims[1] >= other.dims[1] && self.depth <= other.depth
    }

    fn main_eigenvalue(&self) -> i64 {
        self.n as i64 * (self.q as i64 - 1) - (self.b + self.c) as i64
    }

    fn self_degree(&self) -> u64 {
        self.n as u64 * (self.q as u64 - 1) - self.b
    }
}

/// The table column a recipe counts toward, from its outermost construction.
pub fn column_of(recipe: &Recipe) -> Option<Column> {
    match recipe {
        Recipe::Complement(inner) | Recipe::Lines { inner, .. } => column_of(inner),
        Recipe::Perfect { .. } => Some(Column::Perfect),
        Recipe::MultLength { .. } | Recipe::Mds2 { .. } => Some(Column::Length),
        Recipe::MultAlphabet { .. } => Some(Column::Alphabet),
        Recipe::SplitIBase { .. }
        | Recipe::SplitIFaces { .. }
        | Recipe::Invasion { .. }
        | Recipe::FlaassStd { .. }
        | Recipe::FlaassImpr { .. }
        | Recipe::FlaassIter { .. } => Some(Column::Splitting),
        Recipe::Split2 { t, .. } if *t >= 1 => Some(Column::SplitAlphabet),
        Recipe::Split2 { .. } | Recipe::Extend { .. } => None,
    }
}

/// Whether color 1 of `item` is known to split into lines.
fn lines_available(item: &Item) -> bool {
    if item.self_degree() == 0 {
        return false;
    }
    if item.q == 2 {
        // A regular bipartite graph has a perfect matching.
        return item.n <= MAX_MATCHING_N;
    }
    matches!(&item.recipe, Recipe::Complement(inner) if **inner == Recipe::Perfect { r: 2, q: 3, t: 1 })
}

/// All items reachable within `depth` layers, for the alphabets that feed
/// tables over `q` up to b + c ≤ `max_bc`.
pub struct Planner {
    q: u32,
    max_bc: u64,
    items: BTreeMap<Key, Vec<Item>>,
}

impl Planner {
    pub fn new(q: u32, max_bc: u64, depth: usize) -> Planner {
        let alphabets: Vec<u32> = (2..=q).filter(|d| q.is_multiple_of(*d)).collect();
        let mut planner = Planner {
            q,
            max_bc,
            items: BTreeMap::new(),
        };
        let mut frontier = Vec::new();
        for &a in &alphabets {
            for item in base_items(a, planner.cap(a)) {
                frontier.extend(planner.insert(item));
            }
        }
        for _ in 0..depth {
            frontier.sort_by(|x: &Item, y: &Item| (x.key(), x.n, &x.recipe).cmp(&(y.key(), y.n, &y.recipe)));
            let mut candidates: Vec<Item> = frontier
                .par_iter()
                .filter(|it| it.depth < depth)
                .flat_map_iter(|it| planner.children(it, &alphabets))
                .collect();
            candidates.sort_by(|x, y| (x.key(), x.n, x.depth, &x.recipe).cmp(&(y.key(), y.n, y.depth, &y.recipe)));
            candidates.dedup_by(|x, y| x.recipe == y.recipe);
            frontier.clear();
            for item in candidates {
                frontier.extend(planner.insert(item));
            }
            if frontier.is_empty() {
                break;
            }
        }
        planner
    }

    fn cap(&self, alphabet: u32) -> u64 {
        self.max_bc * alphabet as u64 / self.q as u64
    }

    /// Inserts an item and its complement; returns those that were kept.
    fn insert(&mut self, item: Item) -> Vec<Item> {
        let mut kept = Vec::new();
        for it in [item.clone(), item.complement()] {
            let set = self.items.entry(it.key()).or_default();
            if set
                .iter()
                .any(|o| o.dominates(&it) && (o.recipe <= it.recipe || !it.dominates(o)))
            {
                continue;
            }
            set.retain(|o| !it.dominates(o));
            set.push(it.clone());
            kept.push(it);
        }
        kept
    }

    fn children(&self, it: &Item, alphabets: &[u32]) -> Vec<Item> {
        let mut out = Vec::new();
        let sum = it.b + it.c;
        let boxed = || Box::new(it.recipe.clone());
        let mut push = |r: Recipe| {
            if let Some(child) = Item::from_recipe(r) {
                if child.b + child.c <= self.cap(child.q) && child.n as u64 <= child.b + child.c {
                    out.push(child);
                }
            }
        };
        for t in 2.. {
            if t as u64 * sum > self.cap(it.q) {
                break;
            }
            push(Recipe::MultLength { t, inner: boxed() });
        }
        for &a in alphabets {
            if a > it.q && a % it.q == 0 {
                push(Recipe::MultAlphabet {
                    p: a / it.q,
                    inner: boxed(),
                });
            }
        }
        let q = it.q;
        if prime_power(q as u64).is_none() || q as u64 * sum > self.cap(q) {
            return out;
        }
        let lambda = it.main_eigenvalue();
        if lambda <= 0 {
            for t1 in 0..=q {
                for t2 in 0..=q {
                    if t1 + t2 > 0 && t1 + t2 < 2 * q {
                        push(Recipe::FlaassStd { t1, t2, inner: boxed() });
                    }
                }
            }
        }
        let (inner, d) = if it.dims[0] == 0 && lines_available(it) {
            (
                Box::new(Recipe::Lines {
                    color: 1,
                    inner: boxed(),
                }),
                1,
            )
        } else {
            (boxed(), it.dims[0])
        };
        if d == 0 {
            return out;
        }
        let k1 = (d as i64).min(-lambda);
        if k1 >= 1 {
            for t in 1..=q {
                push(Recipe::FlaassImpr {
                    variant: 1,
                    t,
                    k: k1 as usize,
                    inner: inner.clone(),
                });
            }
        }
        let k_min = if lambda <= 0 {
            1
        } else {
            (lambda as usize).div_ceil(q as usize - 1)
        };
        for k in k_min.max(1)..=d.min(it.n.saturating_sub(1)) {
            for t in 1..=q {
                push(Recipe::FlaassImpr {
                    variant: 2,
                    t,
                    k,
                    inner: inner.clone(),
                });
            }
        }
        out
    }

    /// The best witness per applicable column for the oriented-or-swapped
    /// parameters (b, c).
    pub fn columns(&self, b: u64, c: u64) -> BTreeMap<Column, Witness> {
        self.columns_at(self.q, b, c)
    }

    pub fn columns_at(&self, q: u32, b: u64, c: u64) -> BTreeMap<Column, Witness> {
        let (b, c) = (b.max(c), b.min(c));
        let mut out = BTreeMap::new();
        for column in Column::ALL {
            if !column.applies(q) {
                continue;
            }
            let best = self
                .items
                .get(&(q, b, c, Some(column)))
                .into_iter()
                .flatten()
                .map(|it| Witness {
                    n: it.n,
                    recipe: it.recipe.clone(),
                })
                .min();
            if let Some(w) = best {
                out.insert(column, w);
            }
        }
        out
    }

    /// Every (b, c) with b ≥ c reached for alphabet `q`.
    pub fn reached(&self, q: u32) -> BTreeSet<(u64, u64)> {
        self.items
            .keys()
            .filter(|k| k.0 == q && k.1 >= k.2)
            .map(|k| (k.1, k.2))
            .collect()
    }
}

fn base_items(q: u32, cap: u64) -> Vec<Item> {
    let mut recipes = Vec::new();
    let pp = prime_power(q as u64).is_some();
    let mut size = q as u64;
    let mut r = 1;
    while size <= cap && (r == 1 || pp) {
        for t in 1..size.min(u32::MAX as u64) {
            recipes.push(Recipe::Perfect { r, q, t: t as u32 });
        }
        r += 1;
        size *= q as u64;
    }
    for q0 in [2u32, 3] {
        if q.is_multiple_of(q0) && q / q0 >= 2 {
            let p = q / q0;
            if (q0 * q0 * p) as u64 <= cap {
                for t in 0..p {
                    recipes.push(Recipe::Split2 { q: q0, p, t });
                }
            }
        }
    }
    recipes.into_iter().filter_map(Item::from_recipe).collect()
}

/// The smallest-n witness for (b, c) over the applicable columns.
pub fn plan(q: u32, b: u64, c: u64, depth: usize) -> Option<Witness> {
    let sum = b + c;
    let max_bc = sum.div_ceil(q as u64) * q as u64;
    Planner::new(q, max_bc, depth).columns(b, c).into_values().min()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn col(p: &Planner, b: u64, c: u64, column: Column) -> Option<usize> {
        p.columns(b, c).get(&column).map(|w| w.n)
    }

    #[test]
    fn ternary_columns() {
        let p = Planner::new(3, 27, DEFAULT_DEPTH);
        assert_eq!(col(&p, 6, 3, Column::Length), Some(3));
        assert_eq!(col(&p, 6, 3, Column::Perfect), Some(4));
        assert_eq!(col(&p, 6, 3, Column::Splitting), Some(4));
        assert_eq!(col(&p, 16, 11, Column::Splitting), Some(12));
        assert_eq!(col(&p, 19, 8, Column::Splitting), Some(12));
        assert_eq!(col(&p, 14, 13, Column::Splitting), Some(13));
        assert_eq!(col(&p, 15, 12, Column::Length), Some(12));
        assert_eq!(col(&p, 2, 1, Column::Length), None);
        assert!(!p.columns(6, 3).contains_key(&Column::Alphabet));
    }

    #[test]
    fn composite_alphabet_columns() {
        let p = Planner::new(4, 32, DEFAULT_DEPTH);
        assert_eq!(col(&p, 5, 3, Column::SplitAlphabet), Some(3));
        assert_eq!(col(&p, 10, 6, Column::Alphabet), Some(6));
        assert_eq!(col(&p, 14, 2, Column::Alphabet), Some(7));
        assert_eq!(col(&p, 29, 3, Column::Splitting), Some(14));
        assert!(p.columns(21, 3).is_empty());
        let p = Planner::new(6, 12, DEFAULT_DEPTH);
        assert_eq!(col(&p, 9, 3, Column::SplitAlphabet), Some(3));
        assert_eq!(col(&p, 12 - 4, 4, Column::Alphabet), Some(2));
        assert!(p.columns(7, 5).is_empty());
    }

    #[test]
    fn plan_examples() {
        let w = plan(3, 16, 11, DEFAULT_DEPTH).unwrap();
        assert_eq!(w.n, 12);
        let pred = w.recipe.predict().unwrap();
        assert_eq!(pred.shape.n(), 12);
        let (b, c) = pred.bc().unwrap();
        assert_eq!((b.max(c), b.min(c)), (16, 11));
        assert_eq!(plan(4, 5, 3, DEFAULT_DEPTH).unwrap().n, 3);
        assert_eq!(plan(6, 12, 6, DEFAULT_DEPTH).unwrap().n, 3);
        assert!(plan(4, 21, 3, DEFAULT_DEPTH).is_none());
    }

    #[test]
    fn deterministic() {
        let a = Planner::new(4, 16, DEFAULT_DEPTH);
        let b = Planner::new(4, 16, DEFAULT_DEPTH);
        for (x, y) in a.reached(4).iter().zip(b.reached(4).iter()) {
            assert_eq!(x, y);
            assert_eq!(a.columns(x.0, x.1), b.columns(y.0, y.1));
        }
    }
}
