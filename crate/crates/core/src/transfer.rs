//! Singular-triplet recombination and the end-to-end noise transfer.
//!
//! The restyled image keeps the leading `k` singular triplets of the source
//! (content) and takes the remaining triplets from the target (noise). The
//! result is clipped and quantized to 8 bits, then histogram matched against
//! the target.

use std::ops::Range;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::raster::{axpy, histogram_match, resize_bilinear, GrayImage, RealMatrix};
use crate::svd::{svd, SvdFactors};

/// Number of leading source triplets retained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NoiseThreshold(usize);

impl NoiseThreshold {
    pub const fn new(k: usize) -> Self {
        Self(k)
    }

    pub const fn get(self) -> usize {
        self.0
    }

    fn check(self, max: usize) -> Result<usize> {
        if self.0 > max {
            Err(Error::ThresholdOutOfRange { k: self.0, max })
        } else {
            Ok(self.0)
        }
    }
}

impl From<usize> for NoiseThreshold {
    fn from(k: usize) -> Self {
        Self(k)
    }
}

/// How a target of different size is brought to the source's dimensions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum ResizePolicy {
    /// Bilinear resample of the target.
    #[default]
    ResizeTarget,
    /// Centered crop of the target; fails if the target is smaller.
    CenterCrop,
    /// Dimensions must already agree.
    Strict,
}

impl FromStr for ResizePolicy {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "resize-target" => Ok(Self::ResizeTarget),
            "center-crop" => Ok(Self::CenterCrop),
            "strict" => Ok(Self::Strict),
            other => Err(format!(
                "unknown resize policy '{other}' (expected resize-target, center-crop or strict)"
            )),
        }
    }
}

impl std::fmt::Display for ResizePolicy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::ResizeTarget => "resize-target",
            Self::CenterCrop => "center-crop",
            Self::Strict => "strict",
        })
    }
}

/// `sum_{i in range} sigma_i u_i v_i^T`
pub(crate) fn partial_product(f: &SvdFactors, range: Range<usize>) -> RealMatrix {
    let (m, n) = f.shape();
    let mut out = RealMatrix::zeros(m, n);
    if range.is_empty() {
        return out;
    }
    // Scaled right vectors, one contiguous row per triplet.
    let scaled: Vec<Vec<f64>> = range
        .clone()
        .map(|i| (0..n).map(|c| f.sigma()[i] * f.v()[(c, i)]).collect())
        .collect();
    for r in 0..m {
        let urow = &f.u().row(r)[range.clone()];
        let out_row = out.row_mut(r);
        for (&coef, w) in urow.iter().zip(&scaled) {
            axpy(coef, w, out_row);
        }
    }
    out
}

/// Rank-`k` truncation `sum_{i<k} sigma_i u_i v_i^T`; `k = 0` gives zeros.
pub fn low_rank(f: &SvdFactors, k: NoiseThreshold) -> Result<RealMatrix> {
    let k = k.check(f.rank_bound())?;
    Ok(partial_product(f, 0..k))
}

fn check_same_shape(a: &SvdFactors, b: &SvdFactors) -> Result<()> {
    if a.shape() != b.shape() {
        return Err(Error::ShapeMismatch {
            left: a.shape(),
            right: b.shape(),
        });
    }
    Ok(())
}

/// Stacks the first `k` source triplets with triplets `k..r` of the target
/// and multiplies out `U_r Sigma_r V_r^T`.
pub fn recombine(source: &SvdFactors, target: &SvdFactors, k: NoiseThreshold) -> Result<RealMatrix> {
    check_same_shape(source, target)?;
    let r = source.rank_bound();
    let k = k.check(r)?;
    let (m, n) = source.shape();
    let u = RealMatrix::from_fn(m, r, |i, j| if j < k { source.u()[(i, j)] } else { target.u()[(i, j)] });
    let v = RealMatrix::from_fn(n, r, |i, j| if j < k { source.v()[(i, j)] } else { target.v()[(i, j)] });
    let sigma = (0..r)
        .map(|j| if j < k { source.sigma()[j] } else { target.sigma()[j] })
        .collect();
    let mixed = SvdFactors::from_parts(u, sigma, v)?;
    Ok(partial_product(&mixed, 0..r))
}

/// Same quantity as [`recombine`], written as
/// `low_rank(source, k) + (target_matrix - low_rank(target, k))`.
pub fn recombine_residual(
    source: &SvdFactors,
    target: &SvdFactors,
    target_matrix: &RealMatrix,
    k: NoiseThreshold,
) -> Result<RealMatrix> {
    check_same_shape(source, target)?;
    if target.shape() != target_matrix.shape() {
        return Err(Error::ShapeMismatch {
            left: target.shape(),
            right: target_matrix.shape(),
        });
    }
    let k = k.check(source.rank_bound())?;
    let mut out = target_matrix.clone();
    let content = partial_product(source, 0..k);
    let target_head = partial_product(target, 0..k);
    for ((o, &c), &t) in out
        .as_mut_slice()
        .iter_mut()
        .zip(content.as_slice())
        .zip(target_head.as_slice())
    {
        *o += c - t;
    }
    Ok(out)
}

/// Brings `target` to the dimensions of `source`.
pub fn reconcile_target(source: &GrayImage, target: &GrayImage, policy: ResizePolicy) -> Result<GrayImage> {
    let (w, h) = source.dimensions();
    if target.dimensions() == (w, h) {
        return Ok(target.clone());
    }
    match policy {
        ResizePolicy::ResizeTarget => resize_bilinear(target, w, h),
        ResizePolicy::CenterCrop => target.center_crop(w, h),
        ResizePolicy::Strict => Err(Error::ShapeMismatch {
            left: source.dimensions(),
            right: target.dimensions(),
        }),
    }
}

/// Recombined matrix before clipping. Both images must share dimensions.
pub fn svdna_matrix(source: &GrayImage, target: &GrayImage, k: NoiseThreshold) -> Result<RealMatrix> {
    if source.dimensions() != target.dimensions() {
        return Err(Error::ShapeMismatch {
            left: source.dimensions(),
            right: target.dimensions(),
        });
    }
    k.check(source.width().min(source.height()))?;
    let (s, t) = (source.to_matrix(), target.to_matrix());
    let (fs, ft) = (svd(&s)?, svd(&t)?);
    recombine_residual(&fs, &ft, &t, k)
}

/// Restyles `source` with the noise of `target`.
///
/// The output has the source's dimensions and geometry, so labels drawn on
/// the source remain valid for it.
pub fn svdna_transfer(
    source: &GrayImage,
    target: &GrayImage,
    k: NoiseThreshold,
    policy: ResizePolicy,
) -> Result<GrayImage> {
    let target = reconcile_target(source, target, policy)?;
    let noised = svdna_matrix(source, &target, k)?;
    let clipped = GrayImage::from_matrix(&noised)?;
    Ok(histogram_match(&clipped, &target))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_xoshiro::Xoshiro256PlusPlus;

    fn random_image(rng: &mut impl Rng, w: usize, h: usize) -> GrayImage {
        GrayImage::from_fn(w, h, |_, _| rng.random_range(0..=255)).unwrap()
    }

    fn rel_err(a: &RealMatrix, b: &RealMatrix) -> f64 {
        a.sub(b).unwrap().frobenius_norm() / a.frobenius_norm().max(1.0)
    }

    #[test]
    fn low_rank_extremes() {
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(21);
        let a = random_image(&mut rng, 12, 9).to_matrix();
        let f = svd(&a).unwrap();
        assert!(rel_err(&a, &low_rank(&f, NoiseThreshold::new(9)).unwrap()) <= 1e-10);
        assert!(low_rank(&f, NoiseThreshold::new(0)).unwrap().as_slice().iter().all(|&x| x == 0.0));
        assert!(matches!(
            low_rank(&f, NoiseThreshold::new(10)),
            Err(Error::ThresholdOutOfRange { k: 10, max: 9 })
        ));
    }

    #[test]
    fn low_rank_keeps_dominant_triplet() {
        let f = svd(&RealMatrix::from_diagonal(&[5.0, 3.0, 1.0])).unwrap();
        let l = low_rank(&f, NoiseThreshold::new(1)).unwrap();
        assert!(l.sub(&RealMatrix::from_diagonal(&[5.0, 0.0, 0.0])).unwrap().max_abs() < 1e-14);
    }

    #[test]
    fn recombine_identities() {
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(22);
        let s = random_image(&mut rng, 20, 14).to_matrix();
        let t = random_image(&mut rng, 20, 14).to_matrix();
        let (fs, ft) = (svd(&s).unwrap(), svd(&t).unwrap());
        for k in [0, 1, 7, 14] {
            let same = recombine(&fs, &fs, NoiseThreshold::new(k)).unwrap();
            assert!(rel_err(&s, &same) <= 1e-10);
        }
        assert!(rel_err(&t, &recombine(&fs, &ft, NoiseThreshold::new(0)).unwrap()) <= 1e-10);
        assert!(rel_err(&s, &recombine(&fs, &ft, NoiseThreshold::new(14)).unwrap()) <= 1e-10);
    }

    #[test]
    fn recombine_forms_agree() {
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(23);
        for _ in 0..5 {
            let s = random_image(&mut rng, 31, 24).to_matrix();
            let t = random_image(&mut rng, 31, 24).to_matrix();
            let (fs, ft) = (svd(&s).unwrap(), svd(&t).unwrap());
            for k in [0, 1, 5, 23, 24] {
                let k = NoiseThreshold::new(k);
                let block = recombine(&fs, &ft, k).unwrap();
                let resid = recombine_residual(&fs, &ft, &t, k).unwrap();
                assert!(block.sub(&resid).unwrap().max_abs() <= 1e-9);
            }
        }
    }

    #[test]
    fn recombine_rejects_bad_inputs() {
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(24);
        let fs = svd(&random_image(&mut rng, 8, 8).to_matrix()).unwrap();
        let ft = svd(&random_image(&mut rng, 9, 8).to_matrix()).unwrap();
        assert!(matches!(recombine(&fs, &ft, NoiseThreshold::new(1)), Err(Error::ShapeMismatch { .. })));
        assert!(matches!(
            recombine(&fs, &fs, NoiseThreshold::new(9)),
            Err(Error::ThresholdOutOfRange { .. })
        ));
    }

    #[test]
    fn transfer_identities() {
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(25);
        let s = random_image(&mut rng, 40, 32);
        let t = random_image(&mut rng, 40, 32);
        for k in [0, 5, 20, 32] {
            let out = svdna_transfer(&s, &s, NoiseThreshold::new(k), ResizePolicy::Strict).unwrap();
            assert_eq!(out, s);
        }
        assert_eq!(svdna_transfer(&s, &t, NoiseThreshold::new(0), ResizePolicy::Strict).unwrap(), t);
        assert_eq!(
            svdna_transfer(&s, &t, NoiseThreshold::new(32), ResizePolicy::Strict).unwrap(),
            histogram_match(&s, &t)
        );
    }

    #[test]
    fn shape_policies() {
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(26);
        let s = random_image(&mut rng, 24, 20);
        let big = random_image(&mut rng, 30, 26);
        let small = random_image(&mut rng, 10, 10);
        let k = NoiseThreshold::new(8);
        for t in [&big, &small] {
            let out = svdna_transfer(&s, t, k, ResizePolicy::ResizeTarget).unwrap();
            assert_eq!(out.dimensions(), s.dimensions());
        }
        assert_eq!(
            svdna_transfer(&s, &big, k, ResizePolicy::CenterCrop).unwrap().dimensions(),
            (24, 20)
        );
        assert!(matches!(
            svdna_transfer(&s, &small, k, ResizePolicy::CenterCrop),
            Err(Error::ShapeMismatch { .. })
        ));
        assert!(matches!(
            svdna_transfer(&s, &big, k, ResizePolicy::Strict),
            Err(Error::ShapeMismatch { .. })
        ));
        assert!(matches!(
            svdna_transfer(&s, &s, NoiseThreshold::new(21), ResizePolicy::Strict),
            Err(Error::ThresholdOutOfRange { k: 21, max: 20 })
        ));
    }

    #[test]
    fn policy_parsing() {
        for p in [ResizePolicy::ResizeTarget, ResizePolicy::CenterCrop, ResizePolicy::Strict] {
            assert_eq!(p.to_string().parse::<ResizePolicy>().unwrap(), p);
        }
        assert!("stretch".parse::<ResizePolicy>().is_err());
    }

    #[test]
    fn degradation_is_monotone_in_k() {
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(27);
        for _ in 0..3 {
            let s = random_image(&mut rng, 64, 64);
            let t = random_image(&mut rng, 64, 64);
            let sm = s.to_matrix();
            let dists: Vec<f64> = [0, 4, 8, 16, 32, 64]
                .iter()
                .map(|&k| {
                    svdna_matrix(&s, &t, NoiseThreshold::new(k))
                        .unwrap()
                        .sub(&sm)
                        .unwrap()
                        .frobenius_norm()
                })
                .collect();
            assert!(dists.windows(2).all(|w| w[1] <= w[0] + 1e-9), "{dists:?}");
        }
    }
}
