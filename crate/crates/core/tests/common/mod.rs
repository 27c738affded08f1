#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rand::SeedableRng;
use rand_xoshiro::Xoshiro256PlusPlus;
use svdna::synthetic::{gaussian_image, noisy_phantom};
use svdna::{save_image, GrayImage};

pub fn svdna_cmd() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_svdna"));
    cmd.env("SVDNA_LOG", "error");
    cmd
}

pub fn run(args: &[&str]) -> Output {
    svdna_cmd().args(args).output().expect("spawn svdna")
}

pub fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

pub fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

pub fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

pub fn rng(seed: u64) -> Xoshiro256PlusPlus {
    Xoshiro256PlusPlus::seed_from_u64(seed)
}

pub fn s(path: &Path) -> &str {
    path.to_str().expect("utf-8 temp path")
}

/// Writes `img` to `path`, creating parent directories.
pub fn put(img: &GrayImage, path: &Path) -> PathBuf {
    std::fs::create_dir_all(path.parent().unwrap()).unwrap();
    save_image(img, path).unwrap();
    path.to_path_buf()
}

/// Lays out a registry below `root`: `sources` phantoms under `src/` (split
/// over two subdirectories), `per_target` noise images for each of
/// `targets` domains, and `registry.toml`. Returns the config path.
pub fn registry(root: &Path, sources: usize, targets: usize, per_target: usize, size: usize, k: (usize, usize)) -> PathBuf {
    let mut rng = rng(sources as u64 * 31 + targets as u64);
    for i in 0..sources {
        let sub = if i % 2 == 0 { "a" } else { "b/deep" };
        put(&noisy_phantom(&mut rng, size, size, 2.0), &root.join("src").join(sub).join(format!("{i:05}.png")));
    }
    let mut toml = format!("seed = 99\nk_min = {}\nk_max = {}\n\n[source]\nname = \"src\"\ndir = \"src\"\n", k.0, k.1);
    for t in 0..targets {
        let name = format!("dom{t}");
        for j in 0..per_target {
            let img = gaussian_image(&mut rng, size + t, size, 60.0 + 30.0 * t as f64, 8.0 + 6.0 * t as f64);
            put(&img, &root.join(&name).join(format!("{j}.png")));
        }
        toml.push_str(&format!("\n[[target]]\nname = \"{name}\"\ndir = \"{name}\"\n"));
    }
    let cfg = root.join("registry.toml");
    std::fs::write(&cfg, toml).unwrap();
    cfg
}

/// Every file below `dir`, as (relative path, bytes), sorted.
pub fn tree(dir: &Path) -> Vec<(PathBuf, Vec<u8>)> {
    let mut files: Vec<_> = walkdir::WalkDir::new(dir)
        .into_iter()
        .map(|e| e.unwrap())
        .filter(|e| e.file_type().is_file())
        .map(|e| (e.path().strip_prefix(dir).unwrap().to_path_buf(), std::fs::read(e.path()).unwrap()))
        .collect();
    files.sort();
    files
}

pub fn manifest_rows(out_dir: &Path) -> Vec<csv::StringRecord> {
    let mut r = csv::Reader::from_path(out_dir.join(svdna::cli::MANIFEST_NAME)).unwrap();
    r.records().map(|x| x.unwrap()).collect()
}
