//! Reproducible per-task random streams.
//!
//! Every unit of Monte Carlo work gets its own ChaCha stream derived from
//! `(master seed, task index)`, so results do not depend on scheduling or on
//! the number of worker threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type TaskRng = ChaCha8Rng;

/// Generator for task `index` under `seed`.
pub fn task_rng(seed: u64, index: u64) -> TaskRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Packs a two-level task coordinate into one stream index.
pub fn task_index(group: u64, item: u64) -> u64 {
    assert!(item < 1 << 40, "task item index out of range");
    (group << 40) | item
}

/// Splits `total` into chunks of at most `chunk`; returns `(start, len)`.
pub fn chunks(total: u64, chunk: u64) -> Vec<(u64, u64)> {
    let chunk = chunk.max(1);
    (0..total.div_ceil(chunk))
        .map(|i| {
            let start = i * chunk;
            (start, chunk.min(total - start))
        })
        .collect()
}
