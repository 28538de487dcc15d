//! Deterministic per-trial random streams.
//!
//! Each trial of a randomized suite gets its own ChaCha stream derived from
//! the suite seed and the trial index. Streams are independent of execution
//! order, so parallel and sequential runs of the same suite produce
//! bit-identical results, and any single trial can be replayed in isolation.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The RNG handed to individual trials.
pub type TrialRng = ChaCha8Rng;

/// Returns the RNG for trial `index` of a suite seeded with `seed`.
///
/// Stream 0 is reserved for suite-level draws; trials use streams 1 and up.
pub fn trial_rng(seed: u64, index: u64) -> TrialRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index.wrapping_add(1));
    rng
}

/// Returns the suite-level RNG (stream 0) for draws outside any trial.
pub fn suite_rng(seed: u64) -> TrialRng {
    ChaCha8Rng::seed_from_u64(seed)
}
