//! Deterministic random sources.
//!
//! Generators draw through [`KeyedRng`], a counter-based splitmix64 mix keyed
//! by (seed, stream, index), so each edge or triangle draw is a pure function
//! of its coordinates and independent of evaluation order or thread count.
//! Sequential sampling loops use [`SeqRng`].

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;

#[inline]
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Order-independent draws keyed by (stream, index).
#[derive(Clone, Copy, Debug)]
pub struct KeyedRng {
    seed: u64,
}

impl KeyedRng {
    pub fn new(seed: u64) -> Self {
        KeyedRng { seed }
    }

    #[inline]
    pub fn word(&self, stream: u64, index: u64) -> u64 {
        mix(mix(mix(self.seed) ^ stream) ^ index)
    }

    /// Uniform in [0, 1).
    #[inline]
    pub fn unit(&self, stream: u64, index: u64) -> f64 {
        (self.word(stream, index) >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

/// A sequential splitmix64 stream for sampling loops.
#[derive(Clone, Debug)]
pub struct SeqRng {
    state: u64,
}

impl SeqRng {
    pub fn new(seed: u64) -> Self {
        SeqRng { state: mix(seed) }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN);
        mix(self.state)
    }

    /// Uniform in [0, 1).
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in 0..n (n > 0), by 128-bit multiply.
    pub fn below(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        ((self.next_u64() as u128 * n as u128) >> 64) as usize
    }

    /// Uniform in lo..=hi.
    pub fn range_inclusive(&mut self, lo: usize, hi: usize) -> usize {
        lo + self.below(hi - lo + 1)
    }

    /// A uniform k-subset of 0..n, ascending (partial Fisher-Yates).
    pub fn subset(&mut self, n: usize, k: usize) -> Vec<usize> {
        debug_assert!(k <= n);
        let mut pool: Vec<usize> = (0..n).collect();
        for i in 0..k {
            let j = i + self.below(n - i);
            pool.swap(i, j);
        }
        let mut out = pool[..k].to_vec();
        out.sort_unstable();
        out
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i + 1);
            items.swap(i, j);
        }
    }
}

/// Stream ids for the host generators, derived from class coordinates.
pub(crate) fn pair_stream(i: usize, j: usize) -> u64 {
    0x4550_0000_0000_0000 | ((i as u64) << 24) | (j as u64)
}

pub(crate) fn triple_stream(i: usize, j: usize, k: usize) -> u64 {
    0x5452_0000_0000_0000 | ((i as u64) << 40) | ((j as u64) << 20) | (k as u64)
}
