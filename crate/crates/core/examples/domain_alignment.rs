//! Restyles a nearly clean phantom set toward a noisy copy of itself and
//! reports how far the noise signatures moved.
//!
//! ```bash
//! cargo run --release -p svdna --example domain_alignment
//! ```

use rand::SeedableRng;
use rand_xoshiro::Xoshiro256PlusPlus;
use svdna::metrics::{domain_alignment, noise_profile, NoiseStats};
use svdna::synthetic::phantom_domains;
use svdna::{svdna_transfer, GrayImage, NoiseThreshold, ResizePolicy};

fn profiles(set: &[GrayImage]) -> svdna::Result<Vec<NoiseStats>> {
    set.iter().map(noise_profile).collect()
}

fn mean_immerkaer(stats: &[NoiseStats]) -> f64 {
    stats.iter().map(|s| s.sigma_immerkaer).sum::<f64>() / stats.len() as f64
}

fn main() -> svdna::Result<()> {
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(7);
    let (sources, targets) = phantom_domains(&mut rng, 50, 256, 2.0, 15.0);
    let restyled = sources
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let style = &targets[(i + 1) % targets.len()];
            svdna_transfer(s, style, NoiseThreshold::new(30), ResizePolicy::Strict)
        })
        .collect::<svdna::Result<Vec<_>>>()?;

    let (src, tgt, out) = (profiles(&sources)?, profiles(&targets)?, profiles(&restyled)?);
    println!("mean immerkaer sigma");
    println!("  source    {:8.3}", mean_immerkaer(&src));
    println!("  restyled  {:8.3}", mean_immerkaer(&out));
    println!("  target    {:8.3}", mean_immerkaer(&tgt));
    let before = domain_alignment(&src, &tgt)?;
    let after = domain_alignment(&out, &tgt)?;
    println!("alignment distance to target");
    println!("  source    {before:8.4}");
    println!("  restyled  {after:8.4}  (ratio {:.3})", after / before);
    for (name, set) in [("source", &src), ("restyled", &out), ("target", &tgt)] {
        let m = |f: fn(&NoiseStats) -> f64| set.iter().map(f).sum::<f64>() / set.len() as f64;
        let sd = |f: fn(&NoiseStats) -> f64| {
            let mu = m(f);
            (set.iter().map(|s| (f(s) - mu).powi(2)).sum::<f64>() / set.len() as f64).sqrt()
        };
        println!(
            "  {name:<9} snr {:.3}±{:.3} imm {:.3}±{:.3} wav {:.3}±{:.3}",
            m(|s| s.snr.unwrap_or(0.0)),
            sd(|s| s.snr.unwrap_or(0.0)),
            m(|s| s.sigma_immerkaer),
            sd(|s| s.sigma_immerkaer),
            m(|s| s.sigma_wavelet),
            sd(|s| s.sigma_wavelet)
        );
    }
    Ok(())
}
