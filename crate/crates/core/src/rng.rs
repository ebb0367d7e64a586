//! Seeded, splittable random streams.
//!
//! Every Monte Carlo unit of work draws from its own ChaCha8 stream keyed by
//! `(seed, label, index)`, so results do not depend on scheduling order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Recorded in reports so runs can be reproduced.
pub const ALGORITHM: &str = "ChaCha8Rng(rand_chacha 0.9); seed_from_u64(seed), stream = fnv1a64(label) ^ index";

fn fnv1a(label: &str) -> u64 {
    label.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

pub fn stream(seed: u64, label: &str, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(fnv1a(label) ^ index);
    rng
}
