//! Test-only oracles. Nothing here calls into the crate's implementation
//! of the quantity being checked.

#![allow(dead_code)]

pub mod fuzzy_oracle;
pub mod oracle;

use fuzzy_extract::thresholding::Histogram;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn uniform(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64
}

/// Histogram sampled from a mixture of 2–3 Gaussians over 256 bins.
pub fn random_mixture_histogram(rng: &mut ChaCha8Rng) -> Histogram {
    let components = 2 + (rng.next_u64() % 2) as usize;
    let pixels = 2_000.0 + 60_000.0 * uniform(rng);
    let mut density = [0.0f64; 256];
    for _ in 0..components {
        let mean = 15.0 + 225.0 * uniform(rng);
        let sd = 3.0 + 35.0 * uniform(rng);
        let weight = 0.1 + uniform(rng);
        for (i, d) in density.iter_mut().enumerate() {
            let z = (i as f64 - mean) / sd;
            *d += weight * (-0.5 * z * z).exp() / sd;
        }
    }
    let norm: f64 = density.iter().sum();
    let mut bins = [0u64; 256];
    for (b, d) in bins.iter_mut().zip(density) {
        *b = (pixels * d / norm).round() as u64;
    }
    Histogram::from_bins(bins).expect("mixture has mass")
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
