//! Wall-clock timing of the end-to-end transfer on seeded random images.

use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::error::Result;
use crate::synthetic::{noisy_phantom, uniform_image};
use crate::transfer::{svdna_transfer, NoiseThreshold, ResizePolicy};

#[derive(Clone, Debug)]
pub struct BenchReport {
    pub size: usize,
    pub k: usize,
    pub samples: Vec<Duration>,
}

impl BenchReport {
    /// Nearest-rank percentile, `q` in `[0, 1]`.
    pub fn percentile(&self, q: f64) -> Duration {
        let mut sorted = self.samples.clone();
        sorted.sort();
        let rank = ((q * sorted.len() as f64).ceil() as usize).clamp(1, sorted.len());
        sorted[rank - 1]
    }

    pub fn median(&self) -> Duration {
        self.percentile(0.5)
    }

    pub fn p95(&self) -> Duration {
        self.percentile(0.95)
    }
}

/// Times `iterations` square `size x size` transfers with `k = min(30, size)`.
/// Each iteration uses a fresh phantom source and a uniform-noise target.
pub fn run(size: usize, iterations: usize, seed: u64) -> Result<BenchReport> {
    assert!(size >= 1 && iterations >= 1);
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
    let k = size.min(30);
    let mut samples = Vec::with_capacity(iterations);
    for _ in 0..iterations {
        let source = noisy_phantom(&mut rng, size, size, 2.0);
        let target = uniform_image(&mut rng, size, size);
        let start = Instant::now();
        let out = svdna_transfer(&source, &target, NoiseThreshold::new(k), ResizePolicy::Strict)?;
        samples.push(start.elapsed());
        std::hint::black_box(out);
    }
    Ok(BenchReport { size, k, samples })
}
