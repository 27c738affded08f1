use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::raster::GrayImage;

/// Per-pixel class ids with a declared class count; every label is `< num_classes`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelMask {
    width: usize,
    height: usize,
    labels: Vec<u32>,
    num_classes: u32,
}

impl LabelMask {
    pub fn new(width: usize, height: usize, labels: Vec<u32>, num_classes: u32) -> Result<Self> {
        if labels.len() != width * height || labels.is_empty() {
            return Err(Error::InvalidDimensions {
                width,
                height,
                reason: format!("mask holds {} labels", labels.len()),
            });
        }
        if let Some(&class) = labels.iter().find(|&&l| l >= num_classes) {
            return Err(Error::UnknownClass { class, num_classes });
        }
        Ok(Self {
            width,
            height,
            labels,
            num_classes,
        })
    }

    /// Interprets pixel intensities as class ids.
    pub fn from_image(img: &GrayImage, num_classes: u32) -> Result<Self> {
        Self::new(
            img.width(),
            img.height(),
            img.pixels().iter().map(|&p| u32::from(p)).collect(),
            num_classes,
        )
    }

    pub fn dimensions(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn num_classes(&self) -> u32 {
        self.num_classes
    }

    fn check_class(&self, class: u32) -> Result<()> {
        if class >= self.num_classes {
            return Err(Error::UnknownClass {
                class,
                num_classes: self.num_classes,
            });
        }
        Ok(())
    }
}

/// Overlap counts for one class, summed over any number of mask pairs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OverlapCounts {
    pub intersection: u64,
    pub predicted: u64,
    pub truth: u64,
}

impl OverlapCounts {
    pub fn of(pred: &LabelMask, gt: &LabelMask, class: u32) -> Result<Self> {
        if pred.dimensions() != gt.dimensions() {
            return Err(Error::ShapeMismatch {
                left: pred.dimensions(),
                right: gt.dimensions(),
            });
        }
        pred.check_class(class)?;
        gt.check_class(class)?;
        let mut counts = Self::default();
        for (&p, &g) in pred.labels.iter().zip(&gt.labels) {
            let (p, g) = (p == class, g == class);
            counts.predicted += u64::from(p);
            counts.truth += u64::from(g);
            counts.intersection += u64::from(p && g);
        }
        Ok(counts)
    }

    pub fn merge(&mut self, other: Self) {
        self.intersection += other.intersection;
        self.predicted += other.predicted;
        self.truth += other.truth;
    }

    /// `2|P∩G| / (|P| + |G|)`; 1 when both are empty.
    pub fn dice(&self) -> f64 {
        let denom = self.predicted + self.truth;
        if denom == 0 {
            1.0
        } else {
            2.0 * self.intersection as f64 / denom as f64
        }
    }
}

pub fn dice(pred: &LabelMask, gt: &LabelMask, class: u32) -> Result<f64> {
    Ok(OverlapCounts::of(pred, gt, class)?.dice())
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiceReport {
    pub per_class: BTreeMap<u32, f64>,
    /// Unweighted mean over `per_class`.
    pub mean: f64,
}

impl DiceReport {
    fn from_counts(counts: &BTreeMap<u32, OverlapCounts>) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::EmptySet);
        }
        let per_class: BTreeMap<u32, f64> = counts.iter().map(|(&c, o)| (c, o.dice())).collect();
        let mean = per_class.values().sum::<f64>() / per_class.len() as f64;
        Ok(Self { per_class, mean })
    }
}

pub fn dice_report(pred: &LabelMask, gt: &LabelMask, classes: &[u32]) -> Result<DiceReport> {
    dice_report_pooled(std::iter::once((pred, gt)), classes)
}

/// Dice over several mask pairs, pooling overlap counts per class before
/// dividing (volume-level dice when the pairs are slices of one scan).
pub fn dice_report_pooled<'a>(
    pairs: impl IntoIterator<Item = (&'a LabelMask, &'a LabelMask)>,
    classes: &[u32],
) -> Result<DiceReport> {
    let mut counts: BTreeMap<u32, OverlapCounts> = classes.iter().map(|&c| (c, OverlapCounts::default())).collect();
    for (pred, gt) in pairs {
        for (&class, acc) in counts.iter_mut() {
            acc.merge(OverlapCounts::of(pred, gt, class)?);
        }
    }
    DiceReport::from_counts(&counts)
}
