use super::{quantize, GrayImage};
use crate::error::{Error, Result};

/// Sample position and weight of the right/lower neighbour for each output
/// coordinate, using pixel-center alignment clamped at the borders.
fn taps(src_len: usize, dst_len: usize) -> Vec<(usize, usize, f64)> {
    let scale = src_len as f64 / dst_len as f64;
    (0..dst_len)
        .map(|i| {
            let x = ((i as f64 + 0.5) * scale - 0.5).clamp(0.0, (src_len - 1) as f64);
            let x0 = x.floor() as usize;
            let x1 = (x0 + 1).min(src_len - 1);
            (x0, x1, x - x0 as f64)
        })
        .collect()
}

/// Bilinear resampling to `width x height`.
pub fn resize_bilinear(img: &GrayImage, width: usize, height: usize) -> Result<GrayImage> {
    if width == 0 || height == 0 {
        return Err(Error::InvalidDimensions {
            width,
            height,
            reason: "resize target must be at least 1x1".into(),
        });
    }
    if img.dimensions() == (width, height) {
        return Ok(img.clone());
    }
    let xs = taps(img.width(), width);
    let ys = taps(img.height(), height);
    let px = |r: usize, c: usize| f64::from(img.get(r, c));
    GrayImage::from_fn(width, height, |r, c| {
        let (y0, y1, fy) = ys[r];
        let (x0, x1, fx) = xs[c];
        let top = px(y0, x0) * (1.0 - fx) + px(y0, x1) * fx;
        let bottom = px(y1, x0) * (1.0 - fx) + px(y1, x1) * fx;
        quantize(top * (1.0 - fy) + bottom * fy)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_size_is_identity() {
        let img = GrayImage::from_fn(7, 5, |r, c| (r * 31 + c * 7) as u8).unwrap();
        assert_eq!(resize_bilinear(&img, 7, 5).unwrap(), img);
    }

    #[test]
    fn constant_stays_constant() {
        let img = GrayImage::filled(6, 9, 201).unwrap();
        for (w, h) in [(1, 1), (3, 17), (40, 2), (6, 9)] {
            let out = resize_bilinear(&img, w, h).unwrap();
            assert_eq!(out.dimensions(), (w, h));
            assert!(out.pixels().iter().all(|&p| p == 201));
        }
    }

    #[test]
    fn two_pixel_upsample() {
        // Output centre x = 1 maps to source x = 0.5: 0.5 * 0 + 0.5 * 255 = 127.5 -> 128.
        let img = GrayImage::new(2, 1, vec![0, 255]).unwrap();
        assert_eq!(resize_bilinear(&img, 3, 1).unwrap().pixels(), &[0, 128, 255]);
    }

    #[test]
    fn rejects_empty_target() {
        let img = GrayImage::filled(2, 2, 0).unwrap();
        assert!(resize_bilinear(&img, 0, 2).is_err());
    }
}
