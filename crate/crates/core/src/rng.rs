//! Seed derivation for reproducible, order-insensitive randomness.
//!
//! Every random decision in a run draws from a stream derived from the run
//! seed plus a structural key (stage, iteration, agent). Streams for
//! different keys are independent, so the order in which agents are
//! processed — or grid cells are evaluated — cannot change any outcome.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// splitmix64 finalizer; the standard 64-bit avalanche mix.
#[inline]
pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Fold a sequence of words into one key, order-sensitively.
pub fn mix(words: &[u64]) -> u64 {
    let mut acc = 0x243f_6a88_85a3_08d3u64; // arbitrary non-zero start
    for &w in words {
        acc = splitmix64(acc ^ w);
    }
    acc
}

/// Deterministic generator for a derived key.
pub fn stream(words: &[u64]) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(mix(words))
}

// Stage tags keep streams for different purposes disjoint even when the
// remaining key words collide.
pub const TAG_INIT: u64 = 1;
pub const TAG_PROPOSAL: u64 = 2;
pub const TAG_ACTION: u64 = 3;
pub const TAG_LOUVAIN: u64 = 4;
pub const TAG_CELL: u64 = 5;
