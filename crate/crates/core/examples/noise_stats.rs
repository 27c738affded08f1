//! Noise statistics of images with known Gaussian noise, or of files given
//! on the command line.
//!
//! ```bash
//! cargo run --release -p svdna --example noise_stats -- scan1.png scan2.tif
//! ```

use rand::SeedableRng;
use rand_xoshiro::Xoshiro256PlusPlus;
use svdna::load_image;
use svdna::metrics::noise_profile;
use svdna::synthetic::gaussian_image;

fn main() -> svdna::Result<()> {
    let files: Vec<String> = std::env::args().skip(1).collect();
    if !files.is_empty() {
        for f in &files {
            let s = noise_profile(&load_image(f)?)?;
            println!("{f}: snr {:?} immerkaer {:.3} wavelet {:.3}", s.snr, s.sigma_immerkaer, s.sigma_wavelet);
        }
        return Ok(());
    }

    let mut rng = Xoshiro256PlusPlus::seed_from_u64(11);
    println!("{:>6} {:>10} {:>10} {:>8}", "sigma", "immerkaer", "wavelet", "snr");
    for sigma in [2.0, 5.0, 10.0, 20.0] {
        let img = gaussian_image(&mut rng, 256, 256, 128.0, sigma);
        let s = noise_profile(&img)?;
        println!(
            "{sigma:>6.1} {:>10.3} {:>10.3} {:>8.2}",
            s.sigma_immerkaer,
            s.sigma_wavelet,
            s.snr.unwrap_or(f64::NAN)
        );
    }
    Ok(())
}
