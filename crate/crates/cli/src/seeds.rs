//! Deterministic per-trial random streams.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Seed used when neither `--seed` nor `STARCONF_SEED` is given.
pub const DEFAULT_SEED: u64 = 7;

pub const SEED_ENV: &str = "STARCONF_SEED";

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of trial `index` in a run seeded with `seed`.
pub fn trial_seed(seed: u64, index: usize) -> u64 {
    splitmix64(splitmix64(seed) ^ (index as u64).wrapping_mul(0xd6e8_feb8_6659_fd93))
}

pub fn trial_rng(seed: u64, index: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(trial_seed(seed, index))
}
