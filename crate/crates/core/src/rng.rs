//! Seeded randomness.
//!
//! Every random choice in a simulation is drawn from a [`TrialRng`], a
//! ChaCha8 stream keyed by a single 64-bit seed. Independent streams for
//! sweep cells and trials are derived by mixing indices into a base seed
//! with SplitMix64, so any reported number can be reproduced from
//! `(base_seed, N, trial_index)`.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// SplitMix64 finalizer.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives the seed of sub-stream `stream` from `base`.
pub fn mix_seed(base: u64, stream: u64) -> u64 {
    splitmix64(base ^ splitmix64(stream))
}

/// Seed for trial `trial` of the sweep cell with range size `n`.
pub fn trial_seed(base: u64, n: u64, trial: u64) -> u64 {
    mix_seed(mix_seed(base, n), trial)
}

/// A per-trial generator that remembers the seed it was built from.
#[derive(Debug, Clone)]
pub struct TrialRng {
    seed: u64,
    inner: ChaCha8Rng,
}

impl TrialRng {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn for_trial(base: u64, n: u64, trial: u64) -> Self {
        Self::new(trial_seed(base, n, trial))
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

impl RngCore for TrialRng {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.inner.fill_bytes(dst)
    }
}
