//! Seeded random stream used for every measurement draw.
//!
//! The stream is ChaCha8 keyed by the 64-bit seed through `SeedableRng::seed_from_u64`
//! (a PCG32 expansion of the seed into the 256-bit key). Uniform reals are produced by
//! taking the top 53 bits of the next `u64` and scaling by 2⁻⁵³, so every draw lies in
//! `[0, 1)` and the sequence is identical on every platform for a given seed.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Debug)]
pub struct ShotRng {
    inner: ChaCha8Rng,
    seed: u64,
}

impl ShotRng {
    pub fn new(seed: u64) -> Self {
        Self {
            inner: ChaCha8Rng::seed_from_u64(seed),
            seed,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Independent stream for worker `index`, derived from this stream's seed.
    pub fn fork(&self, index: u64) -> Self {
        let mut inner = ChaCha8Rng::seed_from_u64(self.seed);
        inner.set_stream(index.wrapping_add(1));
        Self {
            inner,
            seed: self.seed,
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform draw in `[0, 1)` with 53 bits of resolution.
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}
