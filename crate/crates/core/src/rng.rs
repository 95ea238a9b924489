//! Seeded random streams.
//!
//! Every stochastic routine takes a 64-bit seed. Independent sub-streams
//! (replicates, bootstrap resamples, parallel chunks) are keyed by a path of
//! counters such as `(method, size index, replicate)`: the path is folded into
//! the seed with a SplitMix64 finaliser and the result seeds a ChaCha8
//! generator. No generator state is shared between sub-streams, so results do
//! not depend on scheduling order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Folds a counter path into `seed`.
pub fn derive_seed(seed: u64, path: &[u64]) -> u64 {
    path.iter().fold(mix(seed.wrapping_add(GOLDEN)), |acc, &k| {
        mix(acc ^ mix(k.wrapping_add(GOLDEN)))
    })
}

/// Generator for the sub-stream `path` of `seed`.
pub fn stream(seed: u64, path: &[u64]) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(seed, path))
}
