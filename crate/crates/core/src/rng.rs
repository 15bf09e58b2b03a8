//! Seeded random number generation.
//!
//! Every stochastic routine takes either a seed or a `&mut SvcRng`. The
//! generator is ChaCha8, which is counter based: a `(seed, stream)` pair
//! addresses an independent keystream, so per-pair or per-trial generators
//! can be derived without sharing state.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SvcRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SvcRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent generator for sub-task `stream` under `seed`.
pub fn rng_for_stream(seed: u64, stream: u64) -> SvcRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Stream id for an unordered pair `(i, j)` with `i < j`.
pub fn pair_stream(i: usize, j: usize) -> u64 {
    ((i as u64) << 32) | (j as u64)
}
