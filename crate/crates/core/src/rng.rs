//! Deterministic random streams.

use rand::{Rng, SeedableRng};
use sha2::{Digest, Sha256};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// A seeded pseudo-random stream. Identical seeds give identical streams.
#[derive(Debug, Clone)]
pub struct RandomSource {
    inner: ChaCha8Rng,
}

impl RandomSource {
    pub fn new(seed: u64) -> Self {
        Self {
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Uniform in `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        self.inner.random::<f64>()
    }

    /// Uniform in the open interval `(0, 1)`.
    pub fn uniform_open(&mut self) -> f64 {
        loop {
            let u = self.inner.random::<f64>();
            if u > 0.0 {
                return u;
            }
        }
    }

    /// Uniform in `[-1, 1)`.
    pub fn uniform_symmetric(&mut self) -> f64 {
        2.0 * self.uniform() - 1.0
    }

    /// Uniform integer in `[0, n)`. Panics if `n == 0`.
    pub fn index(&mut self, n: usize) -> usize {
        self.inner.random_range(0..n)
    }

    pub fn standard_normal(&mut self) -> f64 {
        self.inner.sample(StandardNormal)
    }

    /// Draws a point uniformly from `[-1, 1)^dim`.
    pub fn uniform_point(&mut self, dim: usize) -> Vec<f64> {
        (0..dim).map(|_| self.uniform_symmetric()).collect()
    }
}

/// Stable 64-bit hash of a tuple of byte strings (SHA-256, first 8 bytes,
/// little endian). Each part is length-prefixed so `("ab", "c")` and
/// `("a", "bc")` differ.
pub fn stable_hash64(parts: &[&[u8]]) -> u64 {
    let mut h = Sha256::new();
    for p in parts {
        h.update((p.len() as u64).to_le_bytes());
        h.update(p);
    }
    let digest = h.finalize();
    let mut head = [0u8; 8];
    head.copy_from_slice(&digest[..8]);
    u64::from_le_bytes(head)
}
