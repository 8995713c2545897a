//! Seeded test images. The generator is ChaCha8 seeded through
//! `SeedableRng::seed_from_u64`, which gives the same stream on every
//! platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::image::Image;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Image with integer pixels drawn uniformly from `0..=max`.
pub fn integer_image(rng: &mut impl Rng, n: u32, max: u32) -> Image {
    Image::from_fn(n, |_, _| rng.random_range(0..=max) as f64).expect("valid level")
}

/// Image with pixels drawn uniformly from `[0, 1)`.
pub fn unit_image(rng: &mut impl Rng, n: u32) -> Image {
    Image::from_fn(n, |_, _| rng.random::<f64>()).expect("valid level")
}

/// 16-bit integer image for `seed`, as used by the CLI and benchmarks.
pub fn seeded_integer_image(n: u32, seed: u64) -> Image {
    integer_image(&mut rng(seed), n, u16::MAX as u32)
}
