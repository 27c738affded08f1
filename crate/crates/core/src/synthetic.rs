//! Seeded synthetic data: smooth layered phantoms resembling retinal B-scans
//! and additive Gaussian noise. Used by the examples, the benchmark and tests.

use std::f64::consts::PI;

use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::raster::{GrayImage, RealMatrix};

/// Smooth phantom: a handful of horizontal tissue bands with gently curved
/// boundaries and soft edges over a dark background, plus one or two blobs.
pub fn phantom(rng: &mut impl Rng, width: usize, height: usize) -> RealMatrix {
    let h = height as f64;
    let layers = rng.random_range(3..=5);
    let mut top = h * rng.random_range(0.15..0.3);
    let mut bands = Vec::with_capacity(layers);
    for _ in 0..layers {
        let thickness = h * rng.random_range(0.05..0.12);
        bands.push((
            top,
            thickness,
            rng.random_range(60.0..200.0),
            h * rng.random_range(0.01..0.06),
            rng.random_range(0.5..2.0),
            rng.random_range(0.0..2.0 * PI),
        ));
        top += thickness;
    }
    let blobs: Vec<(f64, f64, f64, f64)> = (0..rng.random_range(1..=2))
        .map(|_| {
            (
                rng.random_range(0.2..0.8) * width as f64,
                rng.random_range(0.3..0.7) * h,
                rng.random_range(0.04..0.1) * width as f64,
                rng.random_range(-50.0..50.0),
            )
        })
        .collect();
    let background = rng.random_range(20.0..40.0);
    let edge = 2.5;
    let soft_step = |d: f64| 1.0 / (1.0 + (-d / edge).exp());

    RealMatrix::from_fn(height, width, |r, c| {
        let (y, x) = (r as f64, c as f64);
        let mut v = background;
        for &(top, thick, level, amp, freq, phase) in &bands {
            let shift = amp * (2.0 * PI * freq * x / width as f64 + phase).sin();
            let inside = soft_step(y - top - shift) * soft_step(top + thick + shift - y);
            v += (level - background) * inside;
        }
        for &(cx, cy, radius, gain) in &blobs {
            let d2 = ((x - cx).powi(2) + (y - cy).powi(2)) / (radius * radius);
            v += gain * (-0.5 * d2).exp();
        }
        v
    })
}

/// `base + N(0, sigma^2)` per entry.
pub fn add_gaussian_noise(rng: &mut impl Rng, base: &RealMatrix, sigma: f64) -> RealMatrix {
    if sigma == 0.0 {
        return base.clone();
    }
    let dist = Normal::new(0.0, sigma).expect("finite non-negative sigma");
    let mut out = base.clone();
    out.as_mut_slice().iter_mut().for_each(|x| *x += dist.sample(rng));
    out
}

/// Constant `mean` plus Gaussian noise, quantized to 8 bits.
pub fn gaussian_image(rng: &mut impl Rng, width: usize, height: usize, mean: f64, sigma: f64) -> GrayImage {
    let field = add_gaussian_noise(rng, &RealMatrix::from_fn(height, width, |_, _| mean), sigma);
    GrayImage::from_matrix(&field).expect("finite samples")
}

/// Uniformly random 8-bit image.
pub fn uniform_image(rng: &mut impl Rng, width: usize, height: usize) -> GrayImage {
    GrayImage::from_fn(width, height, |_, _| rng.random()).expect("non-empty dimensions")
}

/// Phantom plus noise, quantized.
pub fn noisy_phantom(rng: &mut impl Rng, width: usize, height: usize, sigma: f64) -> GrayImage {
    let clean = phantom(rng, width, height);
    GrayImage::from_matrix(&add_gaussian_noise(rng, &clean, sigma)).expect("finite samples")
}

/// Paired synthetic domains of `count` square images: a nearly clean phantom
/// set (noise `source_sigma`) and the same phantoms with noise `target_sigma`.
pub fn phantom_domains(
    rng: &mut impl Rng,
    count: usize,
    size: usize,
    source_sigma: f64,
    target_sigma: f64,
) -> (Vec<GrayImage>, Vec<GrayImage>) {
    (0..count)
        .map(|_| {
            let clean = phantom(rng, size, size);
            let mut quantized = |sigma: f64| GrayImage::from_matrix(&add_gaussian_noise(rng, &clean, sigma)).expect("finite samples");
            let source = quantized(source_sigma);
            (source, quantized(target_sigma))
        })
        .unzip()
}
