//! Deterministic random streams.
//!
//! Trial `t` of any randomized routine draws from stream `t` of the ChaCha
//! generator keyed by the master seed, so trials are independent of each
//! other and of evaluation order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn master_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial.wrapping_add(1));
    rng
}
