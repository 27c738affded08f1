//! Restyles one image with the noise of another.
//!
//! ```bash
//! cargo run --release -p svdna --example restyle -- source.png target.png out.png 30
//! ```
//!
//! Without arguments a synthetic pair is generated and written to the
//! system temp directory.

use std::path::PathBuf;

use rand::SeedableRng;
use rand_xoshiro::Xoshiro256PlusPlus;
use svdna::synthetic::{gaussian_image, noisy_phantom};
use svdna::{load_image, save_image, svdna_transfer, NoiseThreshold, ResizePolicy};

fn main() -> svdna::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (source, target, out, k) = if let [s, t, o, rest @ ..] = args.as_slice() {
        let k = rest.first().and_then(|k| k.parse().ok()).unwrap_or(30);
        (load_image(s)?, load_image(t)?, PathBuf::from(o), k)
    } else {
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(3);
        let source = noisy_phantom(&mut rng, 256, 192, 2.0);
        // different size on purpose: the default policy resizes the target
        let target = gaussian_image(&mut rng, 300, 300, 90.0, 25.0);
        (source, target, std::env::temp_dir().join("svdna_restyled.png"), 30)
    };

    let restyled = svdna_transfer(&source, &target, NoiseThreshold::new(k), ResizePolicy::ResizeTarget)?;
    save_image(&restyled, &out)?;
    let (w, h) = restyled.dimensions();
    println!("wrote {w}x{h} image to {} (k={k})", out.display());
    Ok(())
}
