//! Per-trial random streams.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// FNV-1a, used because the std hasher is not stable across releases.
fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

/// Stream for one trial of one check. Depends only on `(seed, check, trial)`,
/// so results do not depend on which worker runs the trial.
pub fn trial_rng(seed: u64, check: &str, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(fnv1a(check));
    // 2³² words per trial is far more than any trial draws
    rng.set_word_pos((trial as u128) << 32);
    rng
}
