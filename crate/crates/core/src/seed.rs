//! Seed derivation for independent random substreams.
//!
//! Every random decision in a run is drawn from a generator keyed by the master seed and a path
//! such as `(round, machine)`, so the outcome does not depend on which worker executes what.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;

fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derives a child seed from `master` and a key path.
pub fn derive_seed(master: u64, path: &[u64]) -> u64 {
    path.iter().fold(mix(master.wrapping_add(GOLDEN)), |acc, &key| {
        mix(acc ^ mix(key.wrapping_add(GOLDEN).wrapping_mul(GOLDEN)))
    })
}

/// Generator used throughout the crate.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Generator for the substream keyed by `(master, path)`.
pub fn substream(master: u64, path: &[u64]) -> ChaCha8Rng {
    rng(derive_seed(master, path))
}
