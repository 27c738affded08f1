use std::fs::OpenOptions;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use log::warn;

use super::batch::{batch as run_batch, BatchOptions};
use super::format::sig_digits;
use super::{AlignArgs, BatchArgs, BenchArgs, DiceArgs, Failure, NoiseReportArgs, RestyleArgs};
use super::{EXIT_OK, EXIT_VERIFY_MISMATCH};
use crate::augment::{discover_images, RegistryConfig};
use crate::error::Error;
use crate::metrics::{
    domain_alignment, dice_report_pooled, immerkaer_sigma_of, snr_of, wavelet_sigma_of, LabelMask, NoiseStats,
};
use crate::raster::{check_save_path, load_image, save_image};
use crate::transfer::{svdna_transfer, NoiseThreshold};

type CmdResult = Result<i32, Failure>;

pub const NOISE_HEADER: [&str; 7] = ["path", "domain", "width", "height", "snr", "sigma_immerkaer", "sigma_wavelet"];

pub(super) fn restyle(a: &RestyleArgs) -> CmdResult {
    check_save_path(&a.out).map_err(|e| Failure::usage(e.to_string()))?;
    let source = load_image(&a.source)?;
    let target = load_image(&a.target)?;
    let start = Instant::now();
    let out = svdna_transfer(&source, &target, NoiseThreshold::new(a.k), a.resize_policy)?;
    let elapsed = start.elapsed();
    save_image(&out, &a.out)?;
    eprintln!(
        "restyled {}x{} k={} in {} ms",
        out.width(),
        out.height(),
        a.k,
        elapsed.as_millis()
    );
    Ok(EXIT_OK)
}

pub(super) fn batch(a: &BatchArgs) -> CmdResult {
    let config = RegistryConfig::load(&a.config)?;
    let opts = BatchOptions {
        out_dir: a.out_dir.clone(),
        workers: a.workers as usize,
        seed: a.seed,
        verify: a.verify,
    };
    let start = Instant::now();
    let summary = run_batch(config, &opts)?;
    let transfers = summary.records.iter().filter(|r| r.decision.is_transfer()).count();
    eprintln!(
        "{} images ({} restyled) in {} ms",
        summary.records.len(),
        transfers,
        start.elapsed().as_millis()
    );
    if a.verify {
        if summary.mismatches.is_empty() {
            eprintln!("verify: all outputs match");
        } else {
            for m in &summary.mismatches {
                eprintln!("verify: mismatch {}", m.display());
            }
            return Ok(EXIT_VERIFY_MISMATCH);
        }
    }
    Ok(EXIT_OK)
}

fn expand_inputs(inputs: &[PathBuf]) -> Result<Vec<PathBuf>, Error> {
    let mut files = Vec::new();
    for input in inputs {
        if input.is_dir() {
            files.extend(discover_images(input)?);
        } else if input.is_file() {
            files.push(input.clone());
        } else {
            return Err(Error::FileNotFound { path: input.clone() });
        }
    }
    Ok(files)
}

fn opt_field(v: Option<f64>) -> String {
    v.map(|x| sig_digits(x, 6, false)).unwrap_or_default()
}

pub(super) fn noise_report(a: &NoiseReportArgs) -> CmdResult {
    let files = expand_inputs(&a.inputs)?;
    let needs_header = std::fs::metadata(&a.out).map(|m| m.len() == 0).unwrap_or(true);
    if !needs_header {
        let existing = std::fs::read_to_string(&a.out).map_err(|e| Error::io(&a.out, e))?;
        if existing.lines().next() != Some(NOISE_HEADER.join(",").as_str()) {
            return Err(Failure::usage(format!("{} is not a noise report", a.out.display())));
        }
    }

    let mut rows = csv::Writer::from_writer(Vec::new());
    if needs_header {
        rows.write_record(NOISE_HEADER).expect("in-memory write");
    }
    for path in &files {
        let img = load_image(path)?;
        let mat = img.to_matrix();
        let snr = snr_of(&mat).ok();
        let estimate = |r: crate::Result<f64>| match r {
            Ok(v) => Some(v),
            Err(e) => {
                warn!("{}: {e}", path.display());
                None
            }
        };
        let (si, sw) = (estimate(immerkaer_sigma_of(&mat)), estimate(wavelet_sigma_of(&mat)));
        rows.write_record([
            path.display().to_string(),
            a.domain.clone(),
            img.width().to_string(),
            img.height().to_string(),
            opt_field(snr),
            opt_field(si),
            opt_field(sw),
        ])
        .expect("in-memory write");
    }
    let bytes = rows.into_inner().expect("in-memory flush");
    let mut file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(&a.out)
        .map_err(|e| Error::WriteError {
            path: a.out.clone(),
            reason: e.to_string(),
        })?;
    file.write_all(&bytes).map_err(|e| Error::WriteError {
        path: a.out.clone(),
        reason: e.to_string(),
    })?;
    eprintln!("{} rows appended to {}", files.len(), a.out.display());
    Ok(EXIT_OK)
}

/// One parsed noise-report row.
#[derive(Clone, Debug, PartialEq)]
pub struct NoiseRow {
    pub path: String,
    pub domain: String,
    pub width: usize,
    pub height: usize,
    pub snr: Option<f64>,
    pub sigma_immerkaer: Option<f64>,
    pub sigma_wavelet: Option<f64>,
}

impl NoiseRow {
    pub fn stats(&self) -> Option<NoiseStats> {
        Some(NoiseStats {
            snr: self.snr,
            sigma_immerkaer: self.sigma_immerkaer?,
            sigma_wavelet: self.sigma_wavelet?,
        })
    }
}

/// Reads a noise report; any deviation from the schema is a usage error.
pub fn read_noise_csv(path: &Path) -> Result<Vec<NoiseRow>, Failure> {
    if !path.is_file() {
        return Err(Error::FileNotFound { path: path.into() }.into());
    }
    let malformed = |what: String| Failure::usage(format!("{}: {what}", path.display()));
    let mut reader = csv::Reader::from_path(path).map_err(|e| malformed(e.to_string()))?;
    let header = reader.headers().map_err(|e| malformed(e.to_string()))?;
    if header.iter().ne(NOISE_HEADER) {
        return Err(malformed("unexpected header".into()));
    }
    let mut rows = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(|e| malformed(e.to_string()))?;
        let real = |i: usize| -> Result<Option<f64>, Failure> {
            let f = record[i].trim();
            if f.is_empty() {
                return Ok(None);
            }
            f.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .map(Some)
                .ok_or_else(|| malformed(format!("row {}: bad number '{f}'", line + 2)))
        };
        let count = |i: usize| -> Result<usize, Failure> {
            record[i]
                .trim()
                .parse()
                .map_err(|_| malformed(format!("row {}: bad dimension '{}'", line + 2, &record[i])))
        };
        rows.push(NoiseRow {
            path: record[0].to_string(),
            domain: record[1].to_string(),
            width: count(2)?,
            height: count(3)?,
            snr: real(4)?,
            sigma_immerkaer: real(5)?,
            sigma_wavelet: real(6)?,
        });
    }
    Ok(rows)
}

fn stats_of(path: &Path) -> Result<Vec<NoiseStats>, Failure> {
    let rows = read_noise_csv(path)?;
    let stats: Vec<NoiseStats> = rows
        .iter()
        .filter_map(|r| {
            let s = r.stats();
            if s.is_none() {
                warn!("{}: skipping {} (missing sigma)", path.display(), r.path);
            }
            s
        })
        .collect();
    Ok(stats)
}

pub(super) fn align(a: &AlignArgs) -> CmdResult {
    let (sa, sb) = (stats_of(&a.csv_a)?, stats_of(&a.csv_b)?);
    let d = domain_alignment(&sa, &sb)?;
    println!("{}", sig_digits(d, 4, true));
    Ok(EXIT_OK)
}

pub(super) fn dice(a: &DiceArgs) -> CmdResult {
    if a.pred.len() != a.gt.len() {
        return Err(Failure::usage(format!(
            "{} prediction masks but {} ground-truth masks",
            a.pred.len(),
            a.gt.len()
        )));
    }
    let load = |p: &PathBuf| -> Result<LabelMask, Failure> {
        let img = load_image(p)?;
        LabelMask::from_image(&img, a.num_classes).map_err(|e| Failure::usage(format!("{}: {e}", p.display())))
    };
    let preds = a.pred.iter().map(load).collect::<Result<Vec<_>, _>>()?;
    let gts = a.gt.iter().map(load).collect::<Result<Vec<_>, _>>()?;
    let report = dice_report_pooled(preds.iter().zip(&gts), &a.classes)?;
    let header: Vec<String> = report
        .per_class
        .keys()
        .map(|c| format!("class_{c}"))
        .chain(std::iter::once("mean".to_string()))
        .collect();
    let values: Vec<String> = report
        .per_class
        .values()
        .chain(std::iter::once(&report.mean))
        .map(|&v| sig_digits(v, 6, false))
        .collect();
    println!("{}", header.join(","));
    println!("{}", values.join(","));
    Ok(EXIT_OK)
}

pub(super) fn bench(a: &BenchArgs) -> CmdResult {
    if a.size < 16 {
        return Err(Failure::usage(format!("--size must be at least 16 (got {})", a.size)));
    }
    if a.iterations == 0 {
        return Err(Failure::usage("--iterations must be at least 1"));
    }
    let report = crate::bench::run(a.size, a.iterations, a.seed)?;
    let ms = |d: std::time::Duration| d.as_secs_f64() * 1e3;
    eprintln!(
        "{} transfers at {}x{} (k={})",
        report.samples.len(),
        a.size,
        a.size,
        report.k
    );
    println!("median_ms={:.3} p95_ms={:.3}", ms(report.median()), ms(report.p95()));
    Ok(EXIT_OK)
}
