use std::collections::HashSet;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use walkdir::WalkDir;

use crate::error::{Error, Result};

/// Seed used when a config or command line does not provide one.
pub const DEFAULT_SEED: u64 = 20_220_519;

/// Inclusive range from which `k` is drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KRange {
    k_min: usize,
    k_max: usize,
}

impl KRange {
    pub fn new(k_min: usize, k_max: usize) -> Result<Self> {
        if k_min > k_max {
            return Err(Error::Registry(format!("k_min {k_min} exceeds k_max {k_max}")));
        }
        Ok(Self { k_min, k_max })
    }

    pub fn k_min(&self) -> usize {
        self.k_min
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    pub fn contains(&self, k: usize) -> bool {
        (self.k_min..=self.k_max).contains(&k)
    }
}

impl Default for KRange {
    fn default() -> Self {
        Self { k_min: 20, k_max: 50 }
    }
}

/// A named pool of images, in a fixed order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Domain {
    pub name: String,
    /// Root the paths were discovered under, if any; used to mirror layouts.
    pub root: Option<PathBuf>,
    pub paths: Vec<PathBuf>,
}

impl Domain {
    pub fn new(name: impl Into<String>, paths: Vec<PathBuf>) -> Self {
        Self {
            name: name.into(),
            root: None,
            paths,
        }
    }

    /// All `*.png` / `*.tif` / `*.tiff` files below `dir`, sorted by relative path.
    pub fn discover(name: impl Into<String>, dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref();
        Ok(Self {
            name: name.into(),
            root: Some(dir.to_path_buf()),
            paths: discover_images(dir)?,
        })
    }
}

fn is_image_path(path: &Path) -> bool {
    path.extension()
        .and_then(|e| e.to_str())
        .map(|e| matches!(e.to_ascii_lowercase().as_str(), "png" | "tif" | "tiff"))
        .unwrap_or(false)
}

/// Image files below `dir`, ordered lexicographically by path relative to `dir`.
pub fn discover_images(dir: &Path) -> Result<Vec<PathBuf>> {
    if !dir.is_dir() {
        return Err(Error::FileNotFound { path: dir.into() });
    }
    let mut paths = Vec::new();
    for entry in WalkDir::new(dir).sort_by_file_name() {
        let entry = entry.map_err(|e| Error::Io {
            path: e.path().unwrap_or(dir).to_path_buf(),
            source: e.into(),
        })?;
        if entry.file_type().is_file() && is_image_path(entry.path()) {
            paths.push(entry.into_path());
        }
    }
    paths.sort_by(|a, b| a.strip_prefix(dir).unwrap().cmp(b.strip_prefix(dir).unwrap()));
    Ok(paths)
}

/// Source domain plus target domains; `n = 1 + targets.len()`.
#[derive(Clone, Debug)]
pub struct DomainRegistry {
    source: Domain,
    targets: Vec<Domain>,
}

impl DomainRegistry {
    /// Checks that names are unique, every target pool is non-empty, and every path exists.
    pub fn new(source: Domain, targets: Vec<Domain>) -> Result<Self> {
        let mut names = HashSet::new();
        for d in std::iter::once(&source).chain(&targets) {
            if !names.insert(d.name.as_str()) {
                return Err(Error::Registry(format!("duplicate domain name '{}'", d.name)));
            }
            if let Some(missing) = d.paths.iter().find(|p| !p.is_file()) {
                return Err(Error::FileNotFound { path: missing.clone() });
            }
        }
        if let Some(empty) = targets.iter().find(|d| d.paths.is_empty()) {
            return Err(Error::Registry(format!("target domain '{}' has no images", empty.name)));
        }
        Ok(Self { source, targets })
    }

    pub fn source(&self) -> &Domain {
        &self.source
    }

    pub fn targets(&self) -> &[Domain] {
        &self.targets
    }

    /// Total number of domains, source included.
    pub fn n(&self) -> usize {
        1 + self.targets.len()
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    seed: Option<u64>,
    k_min: Option<usize>,
    k_max: Option<usize>,
    source: RawDomain,
    #[serde(default)]
    target: Vec<RawDomain>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDomain {
    name: String,
    dir: PathBuf,
}

/// Parsed registry config file.
///
/// ```toml
/// seed = 7          # optional, defaults to DEFAULT_SEED
/// k_min = 20        # optional
/// k_max = 50        # optional
///
/// [source]
/// name = "spectralis"
/// dir = "data/spectralis"
///
/// [[target]]        # zero or more
/// name = "topcon"
/// dir = "data/topcon"
/// ```
///
/// Relative `dir` entries are resolved against the config file's directory.
#[derive(Clone, Debug)]
pub struct RegistryConfig {
    pub seed: u64,
    pub k_range: KRange,
    pub registry: DomainRegistry,
}

impl RegistryConfig {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        if !path.is_file() {
            return Err(Error::FileNotFound { path: path.into() });
        }
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let base = path.parent().unwrap_or(Path::new(""));
        Self::parse(&text, base)
    }

    pub fn parse(text: &str, base: &Path) -> Result<Self> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| Error::Registry(e.to_string()))?;
        let defaults = KRange::default();
        let k_range = KRange::new(
            raw.k_min.unwrap_or(defaults.k_min),
            raw.k_max.unwrap_or(defaults.k_max),
        )?;
        let resolve = |d: RawDomain| Domain::discover(d.name, base.join(d.dir));
        let source = resolve(raw.source)?;
        let targets = raw.target.into_iter().map(resolve).collect::<Result<Vec<_>>>()?;
        Ok(Self {
            seed: raw.seed.unwrap_or(DEFAULT_SEED),
            k_range,
            registry: DomainRegistry::new(source, targets)?,
        })
    }
}
