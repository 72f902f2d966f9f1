//! Deterministic random streams.
//!
//! Every random decision in a run is drawn from a substream keyed by the run
//! seed and a short path such as `(generation, offspring index)`. Substreams
//! are independent of evaluation order, so sequential and parallel execution
//! produce identical results.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The generator type handed to operators.
pub type GaRng = ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RngStream {
    seed: u64,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        Self { seed }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// A generator for the substream identified by `path`.
    pub fn substream(&self, path: &[u64]) -> GaRng {
        ChaCha8Rng::seed_from_u64(self.derive(path))
    }

    /// A 64-bit seed for `path`, e.g. to seed a nested run.
    pub fn derive(&self, path: &[u64]) -> u64 {
        let mut key = splitmix64(self.seed);
        for &p in path {
            key = splitmix64(key ^ splitmix64(p.wrapping_add(0x632b_e59b_d9b4_e019)));
        }
        key
    }
}
