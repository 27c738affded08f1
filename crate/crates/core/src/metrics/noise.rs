//! Global noise statistics: mean-to-deviation SNR, Immerkaer's fast
//! Laplacian-difference estimator, and the Haar-wavelet MAD estimator.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::raster::{GrayImage, RealMatrix};

/// Scale relating the median absolute value of a standard normal sample to its deviation.
pub const MAD_TO_SIGMA: f64 = 0.6745;

/// Noise signature of one image. `snr` is `None` for constant images.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NoiseStats {
    pub snr: Option<f64>,
    pub sigma_immerkaer: f64,
    pub sigma_wavelet: f64,
}

impl NoiseStats {
    /// Components in fixed order `(snr, sigma_immerkaer, sigma_wavelet)`.
    pub fn components(&self) -> [Option<f64>; 3] {
        [self.snr, Some(self.sigma_immerkaer), Some(self.sigma_wavelet)]
    }
}

/// Mean over population standard deviation of all pixels.
pub fn snr(img: &GrayImage) -> Result<f64> {
    snr_of(&img.to_matrix())
}

pub fn snr_of(mat: &RealMatrix) -> Result<f64> {
    let data = mat.as_slice();
    let n = data.len() as f64;
    let mean = data.iter().sum::<f64>() / n;
    let var = data.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
    if var == 0.0 {
        return Err(Error::ZeroVariance);
    }
    Ok(mean / var.sqrt())
}

pub fn immerkaer_sigma(img: &GrayImage) -> Result<f64> {
    immerkaer_sigma_of(&img.to_matrix())
}

/// Sum of absolute responses to `[[1,-2,1],[-2,4,-2],[1,-2,1]]` over the
/// valid region, scaled by `sqrt(pi/2) / (6 (W-2)(H-2))`.
pub fn immerkaer_sigma_of(mat: &RealMatrix) -> Result<f64> {
    let (h, w) = mat.shape();
    if w < 3 || h < 3 {
        return Err(Error::ImageTooSmall {
            width: w,
            height: h,
            min_width: 3,
            min_height: 3,
        });
    }
    // The mask is the outer product of [1, -2, 1] with itself: filter rows, then columns.
    let mut horiz = RealMatrix::zeros(h, w - 2);
    for r in 0..h {
        let src = mat.row(r);
        for (c, out) in horiz.row_mut(r).iter_mut().enumerate() {
            *out = src[c] - 2.0 * src[c + 1] + src[c + 2];
        }
    }
    let mut total = 0.0;
    for r in 0..h - 2 {
        let (a, b, c) = (horiz.row(r), horiz.row(r + 1), horiz.row(r + 2));
        for i in 0..w - 2 {
            total += (a[i] - 2.0 * b[i] + c[i]).abs();
        }
    }
    Ok((PI / 2.0).sqrt() * total / (6.0 * (w - 2) as f64 * (h - 2) as f64))
}

pub fn wavelet_sigma(img: &GrayImage) -> Result<f64> {
    wavelet_sigma_of(&img.to_matrix())
}

/// Finest-scale diagonal Haar coefficients `(a - b - c + d) / 2` over 2x2
/// blocks (odd trailing row/column dropped); returns `median(|HH|) / 0.6745`.
pub fn wavelet_sigma_of(mat: &RealMatrix) -> Result<f64> {
    let (h, w) = mat.shape();
    if w < 2 || h < 2 {
        return Err(Error::ImageTooSmall {
            width: w,
            height: h,
            min_width: 2,
            min_height: 2,
        });
    }
    let mut detail = Vec::with_capacity((w / 2) * (h / 2));
    for r in (0..h - 1).step_by(2) {
        let (top, bottom) = (mat.row(r), mat.row(r + 1));
        for c in (0..w - 1).step_by(2) {
            detail.push(((top[c] - top[c + 1] - bottom[c] + bottom[c + 1]) * 0.5).abs());
        }
    }
    Ok(median(&mut detail) / MAD_TO_SIGMA)
}

fn median(values: &mut [f64]) -> f64 {
    let n = values.len();
    let mid = n / 2;
    let (_, &mut upper, _) = values.select_nth_unstable_by(mid, f64::total_cmp);
    if n % 2 == 1 {
        upper
    } else {
        let lower = values[..mid].iter().copied().fold(f64::NEG_INFINITY, f64::max);
        0.5 * (lower + upper)
    }
}

/// All three statistics; a constant image yields `snr = None` rather than an error.
pub fn noise_profile(img: &GrayImage) -> Result<NoiseStats> {
    let mat = img.to_matrix();
    let snr = match snr_of(&mat) {
        Ok(v) => Some(v),
        Err(Error::ZeroVariance) => None,
        Err(e) => return Err(e),
    };
    Ok(NoiseStats {
        snr,
        sigma_immerkaer: immerkaer_sigma_of(&mat)?,
        sigma_wavelet: wavelet_sigma_of(&mat)?,
    })
}
