use super::noise::NoiseStats;
use crate::error::{Error, Result};

/// Distance between the mean noise signatures of two sets of images.
///
/// Each statistic is z-normalized with the mean and population standard
/// deviation of the pooled set `a ∪ b`; the result is the Euclidean distance
/// between the two per-set mean vectors. Missing SNR values are skipped when
/// computing that component. A component with zero pooled spread, or with no
/// values in one of the sets, contributes nothing.
pub fn domain_alignment(a: &[NoiseStats], b: &[NoiseStats]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut dist2 = 0.0;
    for component in 0..3 {
        let pick = |set: &[NoiseStats]| -> Vec<f64> {
            set.iter().filter_map(|s| s.components()[component]).collect()
        };
        let (xa, xb) = (pick(a), pick(b));
        if xa.is_empty() || xb.is_empty() {
            continue;
        }
        let pooled: Vec<f64> = xa.iter().chain(&xb).copied().collect();
        let (mean, sd) = mean_sd(&pooled);
        if sd == 0.0 {
            continue;
        }
        let za = (mean_sd(&xa).0 - mean) / sd;
        let zb = (mean_sd(&xb).0 - mean) / sd;
        dist2 += (za - zb) * (za - zb);
    }
    Ok(dist2.sqrt())
}

fn mean_sd(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
    (mean, var.sqrt())
}
