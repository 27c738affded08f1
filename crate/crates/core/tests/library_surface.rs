//! The in-process API must reproduce the command-line results exactly.

mod common;

use common::*;
use rand::Rng;
use svdna::augment::{AugmentDecision, RegistryConfig, Sampler};
use svdna::cli::{read_noise_csv, sig_digits};
use svdna::metrics::noise_profile;
use svdna::synthetic::{gaussian_image, noisy_phantom};
use svdna::{load_image, svdna_transfer, NoiseThreshold, ResizePolicy};

#[test]
fn in_memory_transfer_matches_restyle_command() {
    let dir = tempfile::tempdir().unwrap();
    let mut g = rng(40);
    for i in 0..20 {
        let (w, h) = (g.random_range(16..80), g.random_range(16..80));
        let source = noisy_phantom(&mut g, w, h, 2.0);
        let (tw, th) = (g.random_range(16..80), g.random_range(16..80));
        let target = gaussian_image(&mut g, tw, th, 110.0, 20.0);
        let k = g.random_range(0..=w.min(h));
        let (sp, tp, op) = (dir.path().join(format!("s{i}.png")), dir.path().join(format!("t{i}.png")), dir.path().join(format!("o{i}.png")));
        put(&source, &sp);
        put(&target, &tp);
        let res = run(&["restyle", "-s", s(&sp), "-t", s(&tp), "-k", &k.to_string(), "-o", s(&op)]);
        assert_eq!(code(&res), 0, "{}", stderr(&res));

        let direct = svdna_transfer(&source, &target, NoiseThreshold::new(k), ResizePolicy::ResizeTarget).unwrap();
        assert_eq!(load_image(&op).unwrap(), direct, "pair {i}");
    }
}

#[test]
fn sampler_matches_batch_manifest_and_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = registry(dir.path(), 16, 3, 3, 32, (4, 16));
    let out = dir.path().join("out");
    let res = run(&["batch", "--config", s(&cfg), "--out-dir", s(&out), "--workers", "4"]);
    assert_eq!(code(&res), 0, "{}", stderr(&res));

    let config = RegistryConfig::load(&cfg).unwrap();
    let sampler = Sampler::new(config.registry, config.k_range, config.seed);
    for row in manifest_rows(&out) {
        let ordinal: u64 = row[0].parse().unwrap();
        let decision = sampler.decide(ordinal);
        assert_eq!(decision.kind(), &row[2]);
        if let AugmentDecision::Transfer { domain_name, style_path, k, .. } = &decision {
            assert_eq!(domain_name, &row[3]);
            assert_eq!(style_path.display().to_string(), row[4]);
            assert_eq!(k.to_string(), row[5]);
        }
        let (img, again) = sampler.next(ordinal, &load_image(&row[1]).unwrap()).unwrap();
        assert_eq!(again, decision);
        assert_eq!(load_image(out.join(&row[6])).unwrap(), img);
    }
}

#[test]
fn sampler_decisions_are_reproducible_over_many_ordinals() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = registry(dir.path(), 1, 3, 4, 16, (20, 50));
    let make = || {
        let c = RegistryConfig::load(&cfg).unwrap();
        Sampler::new(c.registry, c.k_range, c.seed)
    };
    let (a, b) = (make(), make());
    let forward: Vec<_> = (0..10_000).map(|i| a.decide(i)).collect();
    let backward: Vec<_> = (0..10_000).rev().map(|i| b.decide(i)).collect();
    assert!(forward.iter().eq(backward.iter().rev()));
}

#[test]
fn noise_profile_matches_report_rows() {
    let dir = tempfile::tempdir().unwrap();
    let mut g = rng(41);
    let imgs: Vec<_> = (0..5)
        .map(|i| put(&gaussian_image(&mut g, 40 + i, 50, 80.0, 3.0 * (i + 1) as f64), &dir.path().join(format!("d/{i}.png"))))
        .collect();
    let csv = dir.path().join("r.csv");
    assert_eq!(code(&run(&["noise-report", s(&dir.path().join("d")), "-o", s(&csv)])), 0);
    for (row, path) in read_noise_csv(&csv).unwrap().iter().zip(&imgs) {
        let p = noise_profile(&load_image(path).unwrap()).unwrap();
        let fmt = |x: f64| sig_digits(x, 6, false);
        assert_eq!(fmt(row.sigma_immerkaer.unwrap()), fmt(p.sigma_immerkaer));
        assert_eq!(fmt(row.sigma_wavelet.unwrap()), fmt(p.sigma_wavelet));
        assert_eq!(fmt(row.snr.unwrap()), fmt(p.snr.unwrap()));
    }
}
