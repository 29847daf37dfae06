//! Seeding contract for reproducible parallel sampling.
//!
//! A master seed keys a ChaCha8 generator; every shot gets its own stream
//! (`stream = shot index`), so results do not depend on how shots are spread
//! over worker threads. One-off draws that happen before the shot loop (such
//! as a reference outcome) use [`SETUP_STREAM`].

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub type ShotRng = ChaCha8Rng;

pub const SETUP_STREAM: u64 = u64::MAX;

pub fn shot_rng(seed: u64, stream: u64) -> ShotRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn setup_rng(seed: u64) -> ShotRng {
    shot_rng(seed, SETUP_STREAM)
}

/// Runs `f` once per shot on the rayon pool; results are ordered by shot index.
pub fn par_shots<R, F>(shots: usize, seed: u64, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize, &mut ShotRng) -> R + Sync,
{
    (0..shots)
        .into_par_iter()
        .map(|s| {
            let mut rng = shot_rng(seed, s as u64);
            f(s, &mut rng)
        })
        .collect()
}
