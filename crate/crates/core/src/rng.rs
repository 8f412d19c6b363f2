//! Reproducible random streams.
//!
//! Every trajectory draws from its own ChaCha8 stream selected by
//! `(master_seed, stream_index)`. ChaCha is counter based, so stream `k` is
//! the same sequence no matter which thread produces it or in what order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type StreamRng = ChaCha8Rng;

/// Generator for ensemble member `stream` under `master_seed`.
pub fn stream_rng(master_seed: u64, stream: u64) -> StreamRng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(stream);
    rng
}

/// Uniform draw on `[0, 1)`.
#[inline]
pub fn unit<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.random::<f64>()
}

/// Uniform draw on the open interval `(0, 1)`.
#[inline]
pub fn open_unit<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    loop {
        let u = rng.random::<f64>();
        if u > 0.0 {
            return u;
        }
    }
}

/// Uniform index on `{1, .., n}` as `floor(n u) + 1`, clamped to `n`.
#[inline]
pub fn uniform_index(n: usize, u: f64) -> usize {
    let k = (n as f64 * u) as usize + 1;
    k.min(n)
}
