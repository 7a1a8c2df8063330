//! Seed plumbing. Every random quantity is drawn from a ChaCha stream keyed by
//! a 64-bit seed and a stream id, so structure, weights and roots never share
//! draws.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub(crate) const STREAM_STRUCTURE: u64 = 0;
pub(crate) const STREAM_WEIGHTS: u64 = 1;
pub(crate) const STREAM_ROOT: u64 = 2;
pub(crate) const STREAM_BRIDGES: u64 = 3;

pub fn stream(seed: u64, id: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id);
    rng
}

/// SplitMix64 finalizer; used to derive independent child seeds.
pub fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for trial `index` of an experiment seeded with `base`.
pub fn trial_seed(base: u64, index: u64) -> u64 {
    mix(base ^ mix(index.wrapping_add(1)))
}
