use std::collections::{HashMap, VecDeque};
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use rand::Rng;

use super::registry::{DomainRegistry, KRange};
use super::rng::{derive_stream, RngStream};
use crate::error::Result;
use crate::raster::{load_image, GrayImage};
use crate::transfer::{svdna_transfer, NoiseThreshold, ResizePolicy};

/// One sampled augmentation outcome.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AugmentDecision {
    NoTransfer,
    Transfer {
        /// Index into [`DomainRegistry::targets`].
        domain: usize,
        domain_name: String,
        /// Index into the chosen domain's image pool.
        style_index: usize,
        style_path: PathBuf,
        k: usize,
    },
}

impl AugmentDecision {
    pub fn is_transfer(&self) -> bool {
        matches!(self, Self::Transfer { .. })
    }

    /// Label used in manifests: `no_transfer` or `transfer`.
    pub fn kind(&self) -> &'static str {
        match self {
            Self::NoTransfer => "no_transfer",
            Self::Transfer { .. } => "transfer",
        }
    }
}

/// Draws one decision: with probability `1/n` no transfer, otherwise a target
/// domain chosen uniformly, a style image chosen uniformly from its pool, and
/// `k` uniform on the inclusive range.
pub fn sample_decision(reg: &DomainRegistry, k_range: KRange, rng: &mut RngStream) -> AugmentDecision {
    let pick = rng.random_range(0..reg.n());
    if pick == 0 {
        return AugmentDecision::NoTransfer;
    }
    let domain = pick - 1;
    let target = &reg.targets()[domain];
    let style_index = rng.random_range(0..target.paths.len());
    let k = rng.random_range(k_range.k_min()..=k_range.k_max());
    AugmentDecision::Transfer {
        domain,
        domain_name: target.name.clone(),
        style_index,
        style_path: target.paths[style_index].clone(),
        k,
    }
}

type CacheSlots = (HashMap<PathBuf, Arc<GrayImage>>, VecDeque<PathBuf>);

/// Bounded decode cache for style images. Eviction is first-in first-out;
/// cached or not, loaded pixels are identical, so results stay deterministic.
#[derive(Debug)]
pub struct StyleCache {
    capacity: usize,
    inner: Mutex<CacheSlots>,
}

impl StyleCache {
    pub fn new(capacity: usize) -> Self {
        Self {
            capacity,
            inner: Mutex::new((HashMap::new(), VecDeque::new())),
        }
    }

    pub fn get(&self, path: &Path) -> Result<Arc<GrayImage>> {
        if self.capacity == 0 {
            return Ok(Arc::new(load_image(path)?));
        }
        if let Some(hit) = self.inner.lock().unwrap().0.get(path) {
            return Ok(Arc::clone(hit));
        }
        let img = Arc::new(load_image(path)?);
        let mut guard = self.inner.lock().unwrap();
        let (map, order) = &mut *guard;
        if !map.contains_key(path) {
            if map.len() >= self.capacity {
                if let Some(old) = order.pop_front() {
                    map.remove(&old);
                }
            }
            map.insert(path.to_path_buf(), Arc::clone(&img));
            order.push_back(path.to_path_buf());
        }
        Ok(img)
    }

    pub fn len(&self) -> usize {
        self.inner.lock().unwrap().0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Applies a decision. The output always has the input's dimensions.
pub fn apply_decision(img: &GrayImage, decision: &AugmentDecision, cache: &StyleCache) -> Result<GrayImage> {
    match decision {
        AugmentDecision::NoTransfer => Ok(img.clone()),
        AugmentDecision::Transfer { style_path, k, .. } => {
            let style = cache.get(style_path)?;
            svdna_transfer(img, &style, NoiseThreshold::new(*k), ResizePolicy::ResizeTarget)
        }
    }
}

/// Seeded sampler: decisions are a pure function of `(seed, registry, ordinal)`.
#[derive(Debug)]
pub struct Sampler {
    registry: DomainRegistry,
    k_range: KRange,
    seed: u64,
    cache: StyleCache,
}

impl Sampler {
    pub const DEFAULT_CACHE: usize = 64;

    pub fn new(registry: DomainRegistry, k_range: KRange, seed: u64) -> Self {
        Self {
            registry,
            k_range,
            seed,
            cache: StyleCache::new(Self::DEFAULT_CACHE),
        }
    }

    pub fn with_cache_capacity(mut self, capacity: usize) -> Self {
        self.cache = StyleCache::new(capacity);
        self
    }

    pub fn registry(&self) -> &DomainRegistry {
        &self.registry
    }

    pub fn k_range(&self) -> KRange {
        self.k_range
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn decide(&self, ordinal: u64) -> AugmentDecision {
        sample_decision(&self.registry, self.k_range, &mut derive_stream(self.seed, ordinal))
    }

    /// Decision for `ordinal` applied to an in-memory image.
    pub fn next(&self, ordinal: u64, img: &GrayImage) -> Result<(GrayImage, AugmentDecision)> {
        let decision = self.decide(ordinal);
        let out = apply_decision(img, &decision, &self.cache)?;
        Ok((out, decision))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::augment::registry::Domain;
    use crate::raster::save_image;

    fn registry_with_targets(dir: &Path, targets: usize, pool: usize) -> DomainRegistry {
        let write = |name: &str, i: usize| {
            let p = dir.join(format!("{name}_{i}.png"));
            let img = GrayImage::from_fn(24, 24, |r, c| ((r * 7 + c * 3 + i * 11) % 256) as u8).unwrap();
            save_image(&img, &p).unwrap();
            p
        };
        let source = Domain::new("source", vec![write("source", 0)]);
        let targets = (0..targets)
            .map(|t| {
                let name = format!("target{t}");
                Domain::new(name.clone(), (0..pool).map(|i| write(&name, i)).collect())
            })
            .collect();
        DomainRegistry::new(source, targets).unwrap()
    }

    #[test]
    fn single_domain_never_transfers() {
        let tmp = tempfile::tempdir().unwrap();
        let reg = registry_with_targets(tmp.path(), 0, 0);
        for o in 0..1000 {
            let d = sample_decision(&reg, KRange::default(), &mut derive_stream(1, o));
            assert_eq!(d, AugmentDecision::NoTransfer);
        }
    }

    #[test]
    fn degenerate_k_range() {
        let tmp = tempfile::tempdir().unwrap();
        let reg = registry_with_targets(tmp.path(), 2, 3);
        let kr = KRange::new(30, 30).unwrap();
        for o in 0..500 {
            if let AugmentDecision::Transfer { k, style_index, .. } = sample_decision(&reg, kr, &mut derive_stream(5, o)) {
                assert_eq!(k, 30);
                assert!(style_index < 3);
            }
        }
    }

    #[test]
    fn no_transfer_is_identity_and_self_transfer_is_near_identity() {
        let tmp = tempfile::tempdir().unwrap();
        let reg = registry_with_targets(tmp.path(), 1, 1);
        let cache = StyleCache::new(4);
        let img = load_image(&reg.source().paths[0]).unwrap();
        assert_eq!(apply_decision(&img, &AugmentDecision::NoTransfer, &cache).unwrap(), img);

        let style_path = reg.targets()[0].paths[0].clone();
        let style = load_image(&style_path).unwrap();
        let d = AugmentDecision::Transfer {
            domain: 0,
            domain_name: "target0".into(),
            style_index: 0,
            style_path,
            k: 10,
        };
        let out = apply_decision(&style, &d, &cache).unwrap();
        let max_dev = out.pixels().iter().zip(style.pixels()).map(|(&a, &b)| a.abs_diff(b)).max().unwrap();
        assert!(max_dev <= 1);
        assert_eq!(cache.len(), 1);
    }

    #[test]
    fn sampler_is_reproducible() {
        let tmp = tempfile::tempdir().unwrap();
        let reg = registry_with_targets(tmp.path(), 3, 2);
        let a = Sampler::new(reg.clone(), KRange::new(2, 12).unwrap(), 77);
        let b = Sampler::new(reg, KRange::new(2, 12).unwrap(), 77).with_cache_capacity(0);
        let img = GrayImage::from_fn(24, 24, |r, c| (r * c % 256) as u8).unwrap();
        for o in [0, 5, 9, 1234] {
            assert_eq!(a.decide(o), b.decide(o));
            assert_eq!(a.next(o, &img).unwrap(), b.next(o, &img).unwrap());
        }
    }

    #[test]
    fn cache_is_bounded() {
        let tmp = tempfile::tempdir().unwrap();
        let reg = registry_with_targets(tmp.path(), 1, 5);
        let cache = StyleCache::new(2);
        for p in &reg.targets()[0].paths {
            cache.get(p).unwrap();
        }
        assert_eq!(cache.len(), 2);
    }
}
