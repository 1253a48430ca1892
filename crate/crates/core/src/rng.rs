//! SplitMix64, the single source of randomness for sampling.
//!
//! Contract: 64-bit state; each call adds 0x9e3779b97f4a7c15 to the state and
//! returns the mixed state. A bounded draw in `0..m` rejects raw outputs at or
//! above the largest multiple of `m` and returns `x % m`. Sampled vertices draw
//! their coordinates in order, coordinate 0 first, which is the same as drawing
//! a uniform rank.

use crate::hamming::Symbol;

#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform draw from `0..m`, `m > 0`.
    pub fn below(&mut self, m: u64) -> u64 {
        assert!(m > 0, "empty range");
        let zone = u64::MAX - (u64::MAX % m + 1) % m;
        loop {
            let x = self.next_u64();
            if x <= zone {
                return x % m;
            }
        }
    }

    /// Fills `out` with uniform symbols in `0..q`.
    pub fn fill_vertex(&mut self, q: u32, out: &mut [Symbol]) {
        for s in out.iter_mut() {
            *s = self.below(q as u64) as Symbol;
        }
    }

    /// A deterministic permutation of `0..len` (Fisher-Yates).
    pub fn permutation(&mut self, len: usize) -> Vec<usize> {
        let mut p: Vec<usize> = (0..len).collect();
        for i in (1..len).rev() {
            let j = self.below(i as u64 + 1) as usize;
            p.swap(i, j);
        }
        p
    }
}
