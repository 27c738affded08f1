//! Seeded multi-domain augmentation: builds a small registry on disk,
//! then shows the per-ordinal decisions and the restyled output.
//!
//! ```bash
//! cargo run --release -p svdna --example augment_sampling
//! ```

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_xoshiro::Xoshiro256PlusPlus;
use svdna::augment::{AugmentDecision, RegistryConfig, Sampler};
use svdna::save_image;
use svdna::synthetic::{gaussian_image, noisy_phantom};

fn main() -> svdna::Result<()> {
    let dir = tempfile::tempdir().expect("temp dir");
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(5);
    for (name, sigma) in [("clean", 0.0), ("speckled", 18.0), ("grainy", 35.0)] {
        std::fs::create_dir_all(dir.path().join(name)).expect("mkdir");
        for i in 0..3 {
            let img = if sigma == 0.0 {
                noisy_phantom(&mut rng, 96, 96, 1.0)
            } else {
                gaussian_image(&mut rng, 96, 96, 100.0, sigma)
            };
            save_image(&img, dir.path().join(name).join(format!("{i}.png")))?;
        }
    }
    let config = RegistryConfig::parse(
        r#"
        seed = 42
        [source]
        name = "clean"
        dir = "clean"
        [[target]]
        name = "speckled"
        dir = "speckled"
        [[target]]
        name = "grainy"
        dir = "grainy"
        "#,
        dir.path(),
    )?;

    let sampler = Sampler::new(config.registry, config.k_range, config.seed);
    for ordinal in 0..6 {
        match sampler.decide(ordinal) {
            AugmentDecision::NoTransfer => println!("#{ordinal}: keep"),
            AugmentDecision::Transfer { domain_name, style_index, k, .. } => {
                println!("#{ordinal}: {domain_name}[{style_index}] k={k}")
            }
        }
    }

    let mut tally = BTreeMap::new();
    for ordinal in 0..3000 {
        let name = match sampler.decide(ordinal) {
            AugmentDecision::NoTransfer => "(none)".to_string(),
            AugmentDecision::Transfer { domain_name, .. } => domain_name,
        };
        *tally.entry(name).or_insert(0) += 1;
    }
    println!("3000 draws: {tally:?}");

    let source = svdna::load_image(dir.path().join("clean/0.png"))?;
    let (out, decision) = sampler.next(1, &source)?;
    println!("ordinal 1 -> {} ({}x{})", decision.kind(), out.width(), out.height());
    Ok(())
}
