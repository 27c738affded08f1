use std::path::{Path, PathBuf};

use log::{info, warn};
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::augment::{AugmentDecision, RegistryConfig, Sampler};
use crate::error::{Error, Result};
use crate::raster::{encode_for_path, load_image};

pub const MANIFEST_NAME: &str = "manifest.csv";
pub const MANIFEST_HEADER: [&str; 7] = ["ordinal", "source_path", "decision", "domain", "style_path", "k", "out_path"];

#[derive(Clone, Debug)]
pub struct BatchOptions {
    pub out_dir: PathBuf,
    pub workers: usize,
    pub seed: Option<u64>,
    pub verify: bool,
}

/// One manifest row. `out_path` is relative to the output directory.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifestRecord {
    pub ordinal: u64,
    pub source_path: PathBuf,
    pub decision: AugmentDecision,
    pub out_path: PathBuf,
}

impl ManifestRecord {
    fn fields(&self) -> [String; 7] {
        let (domain, style, k) = match &self.decision {
            AugmentDecision::NoTransfer => (String::new(), String::new(), String::new()),
            AugmentDecision::Transfer {
                domain_name,
                style_path,
                k,
                ..
            } => (domain_name.clone(), style_path.display().to_string(), k.to_string()),
        };
        [
            self.ordinal.to_string(),
            self.source_path.display().to_string(),
            self.decision.kind().to_string(),
            domain,
            style,
            k,
            self.out_path.display().to_string(),
        ]
    }
}

#[derive(Debug)]
pub struct BatchSummary {
    pub records: Vec<ManifestRecord>,
    /// Outputs (and possibly the manifest) whose recomputed bytes differ; only set with `verify`.
    pub mismatches: Vec<PathBuf>,
}

fn manifest_bytes(records: &[ManifestRecord]) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(MANIFEST_HEADER).expect("in-memory write");
    for r in records {
        w.write_record(r.fields()).expect("in-memory write");
    }
    w.into_inner().expect("in-memory flush")
}

fn sha256(bytes: &[u8]) -> [u8; 32] {
    Sha256::digest(bytes).into()
}

fn matches_on_disk(path: &Path, expected: &[u8]) -> bool {
    std::fs::read(path).map(|b| sha256(&b) == sha256(expected)).unwrap_or(false)
}

/// Restyles every source image of `config` into `opts.out_dir`, mirroring the
/// source tree, and writes `manifest.csv`. Outputs depend only on the seed,
/// the registry and each image's ordinal, never on the worker count.
pub fn batch(config: RegistryConfig, opts: &BatchOptions) -> Result<BatchSummary> {
    let registry = &config.registry;
    let all_inputs = std::iter::once(registry.source())
        .chain(registry.targets())
        .flat_map(|d| d.paths.iter());
    for path in all_inputs {
        if !path.is_file() {
            return Err(Error::FileNotFound { path: path.clone() });
        }
    }

    let seed = opts.seed.unwrap_or(config.seed);
    let source = config.registry.source().clone();
    let sampler = Sampler::new(config.registry, config.k_range, seed);

    let jobs: Vec<(u64, PathBuf, PathBuf)> = source
        .paths
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let rel = match &source.root {
                Some(root) => p.strip_prefix(root).unwrap_or(p).to_path_buf(),
                None => PathBuf::from(p.file_name().unwrap_or(p.as_os_str())),
            };
            (i as u64, p.clone(), rel)
        })
        .collect();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers.max(1))
        .build()
        .map_err(|e| Error::Registry(format!("cannot start worker pool: {e}")))?;

    let verify = opts.verify;
    let results: Vec<Result<(ManifestRecord, bool)>> = pool.install(|| {
        jobs.par_iter()
            .map(|(ordinal, src, rel)| {
                let out = &opts.out_dir.join(rel);
                let img = load_image(src)?;
                let (restyled, decision) = sampler.next(*ordinal, &img)?;
                let bytes = encode_for_path(&restyled, out)?;
                let ok = if verify {
                    matches_on_disk(out, &bytes)
                } else {
                    if let Some(parent) = out.parent() {
                        std::fs::create_dir_all(parent).map_err(|e| Error::WriteError {
                            path: parent.into(),
                            reason: e.to_string(),
                        })?;
                    }
                    std::fs::write(out, &bytes).map_err(|e| Error::WriteError {
                        path: out.clone(),
                        reason: e.to_string(),
                    })?;
                    true
                };
                info!("#{ordinal} {} -> {} ({})", src.display(), out.display(), decision.kind());
                let record = ManifestRecord {
                    ordinal: *ordinal,
                    source_path: src.clone(),
                    decision,
                    out_path: rel.clone(),
                };
                Ok((record, ok))
            })
            .collect()
    });

    let mut records = Vec::with_capacity(results.len());
    let mut mismatches = Vec::new();
    for r in results {
        let (record, ok) = r?;
        if !ok {
            let out = opts.out_dir.join(&record.out_path);
            warn!("output differs: {}", out.display());
            mismatches.push(out);
        }
        records.push(record);
    }

    let manifest_path = opts.out_dir.join(MANIFEST_NAME);
    let manifest = manifest_bytes(&records);
    if verify {
        if !matches_on_disk(&manifest_path, &manifest) {
            warn!("manifest differs: {}", manifest_path.display());
            mismatches.push(manifest_path);
        }
    } else {
        std::fs::create_dir_all(&opts.out_dir).map_err(|e| Error::WriteError {
            path: opts.out_dir.clone(),
            reason: e.to_string(),
        })?;
        std::fs::write(&manifest_path, manifest).map_err(|e| Error::WriteError {
            path: manifest_path.clone(),
            reason: e.to_string(),
        })?;
    }
    Ok(BatchSummary { records, mismatches })
}
