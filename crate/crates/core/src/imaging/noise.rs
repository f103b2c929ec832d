//! Seeded additive Gaussian noise.
//!
//! Samples come from ChaCha8 (`rand_chacha::ChaCha8Rng::seed_from_u64`)
//! through the basic Box–Muller transform:
//!
//! ```text
//! u1 = 1 - (next_u64() >> 11) * 2^-53        in (0, 1]
//! u2 =     (next_u64() >> 11) * 2^-53        in [0, 1)
//! z0 = sqrt(-2 ln u1) * cos(2π u2)
//! z1 = sqrt(-2 ln u1) * sin(2π u2)
//! ```
//!
//! `z0` is returned first and `z1` is cached for the next call. Pixels are
//! visited row-major; color images consume the red plane, then green, then
//! blue from one generator.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{ColorImage, GrayImage, Image};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NoiseSpec {
    pub sigma: f64,
    pub seed: u64,
}

impl NoiseSpec {
    pub fn new(sigma: f64, seed: u64) -> Self {
        assert!(sigma >= 0.0, "noise sigma must be non-negative");
        NoiseSpec { sigma, seed }
    }
}

/// Standard-normal sample stream with a fully specified algorithm.
pub struct GaussianSource {
    rng: ChaCha8Rng,
    spare: Option<f64>,
}

impl GaussianSource {
    pub fn new(seed: u64) -> Self {
        GaussianSource {
            rng: ChaCha8Rng::seed_from_u64(seed),
            spare: None,
        }
    }

    #[inline]
    fn unit(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn next_standard(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        let u1 = 1.0 - self.unit();
        let u2 = self.unit();
        let r = (-2.0 * u1.ln()).sqrt();
        let theta = std::f64::consts::TAU * u2;
        self.spare = Some(r * theta.sin());
        r * theta.cos()
    }
}

fn noisy_plane(plane: &GrayImage, sigma: f64, src: &mut GaussianSource) -> GrayImage {
    let pixels = plane
        .pixels()
        .iter()
        .map(|&p| {
            let v = p as f64 + sigma * src.next_standard();
            v.round().clamp(0.0, 255.0) as u8
        })
        .collect();
    GrayImage::new(plane.width(), plane.height(), pixels).expect("same shape as input")
}

/// `clamp(round(p + n), 0, 255)` per pixel and channel with `n ~ N(0, sigma²)`.
pub fn add_gaussian_noise(img: &Image, spec: NoiseSpec) -> Image {
    if spec.sigma == 0.0 {
        return img.clone();
    }
    let mut src = GaussianSource::new(spec.seed);
    match img {
        Image::Gray(g) => Image::Gray(noisy_plane(g, spec.sigma, &mut src)),
        Image::Color(c) => {
            let [r, g, b] = c.planes();
            let r = noisy_plane(r, spec.sigma, &mut src);
            let g = noisy_plane(g, spec.sigma, &mut src);
            let b = noisy_plane(b, spec.sigma, &mut src);
            Image::Color(ColorImage::from_planes(r, g, b).expect("planes share dimensions"))
        }
    }
}
