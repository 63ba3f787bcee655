//! Reproducible random streams.
//!
//! Every task draws from its own ChaCha stream derived from a master seed,
//! so results do not depend on scheduling or on the order of database
//! records.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SimRng = ChaCha8Rng;

/// Stream `index` under `master`.
pub fn stream(master: u64, index: u64) -> SimRng {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream(index);
    rng
}

/// Stream keyed by a string, e.g. a network id.
pub fn keyed(master: u64, key: &str) -> SimRng {
    stream(master, fnv1a(key.as_bytes()))
}

/// Sub-seed for a named stage of an experiment.
pub fn derive_seed(master: u64, label: &str) -> u64 {
    fnv1a(label.as_bytes()) ^ master.rotate_left(17).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325, |h, &b| {
        (h ^ b as u64).wrapping_mul(0x0100_0000_01b3)
    })
}
