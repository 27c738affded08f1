use std::io::Cursor;
use std::path::Path;

use image::{DynamicImage, ImageFormat, ImageReader};
use log::warn;

use super::GrayImage;
use crate::error::{Error, Result};

/// Decodes PNG, TIFF or JPEG into an 8-bit gray image. Colour inputs are
/// reduced with BT.601 luma weights; alpha is dropped.
pub fn load_image(path: impl AsRef<Path>) -> Result<GrayImage> {
    let path = path.as_ref();
    if !path.is_file() {
        return Err(Error::FileNotFound { path: path.into() });
    }
    let reader = ImageReader::open(path)
        .map_err(|e| Error::io(path, e))?
        .with_guessed_format()
        .map_err(|e| Error::io(path, e))?;
    let unsupported = |reason: &str| Error::UnsupportedFormat {
        path: path.into(),
        reason: reason.into(),
    };
    match reader.format() {
        Some(ImageFormat::Png | ImageFormat::Tiff) => {}
        Some(ImageFormat::Jpeg) => warn!("{}: JPEG input is lossy", path.display()),
        Some(other) => return Err(unsupported(&format!("{other:?} is not supported"))),
        None => return Err(unsupported("unrecognized file signature")),
    }
    let decoded = reader.decode().map_err(|e| Error::DecodeError {
        path: path.into(),
        reason: e.to_string(),
    })?;
    let (w, h) = (decoded.width() as usize, decoded.height() as usize);
    let data = match decoded {
        DynamicImage::ImageLuma8(buf) => buf.into_raw(),
        DynamicImage::ImageLumaA8(buf) => buf.into_raw().chunks_exact(2).map(|p| p[0]).collect(),
        DynamicImage::ImageRgb8(buf) => buf.into_raw().chunks_exact(3).map(luma).collect(),
        DynamicImage::ImageRgba8(buf) => buf.into_raw().chunks_exact(4).map(luma).collect(),
        _ => return Err(unsupported("only 8-bit gray or colour rasters are supported")),
    };
    GrayImage::new(w, h, data).map_err(|e| Error::DecodeError {
        path: path.into(),
        reason: e.to_string(),
    })
}

fn luma(rgb: &[u8]) -> u8 {
    let y = 0.299 * f64::from(rgb[0]) + 0.587 * f64::from(rgb[1]) + 0.114 * f64::from(rgb[2]);
    super::quantize(y)
}

/// Lossless output format implied by the file extension.
fn save_format(path: &Path) -> Result<ImageFormat> {
    let ext = path
        .extension()
        .and_then(|e| e.to_str())
        .map(str::to_ascii_lowercase);
    match ext.as_deref() {
        Some("png") => Ok(ImageFormat::Png),
        Some("tif" | "tiff") => Ok(ImageFormat::Tiff),
        Some(other) => Err(Error::UnsupportedFormat {
            path: path.into(),
            reason: format!("cannot save .{other}; use .png or .tif"),
        }),
        None => Err(Error::UnsupportedFormat {
            path: path.into(),
            reason: "missing file extension".into(),
        }),
    }
}

/// Fails unless `path` names a lossless output format (`.png`, `.tif`, `.tiff`).
pub fn check_save_path(path: impl AsRef<Path>) -> Result<()> {
    save_format(path.as_ref()).map(|_| ())
}

pub(crate) fn encode(img: &GrayImage, format: ImageFormat) -> std::result::Result<Vec<u8>, image::ImageError> {
    let buf = image::GrayImage::from_raw(img.width() as u32, img.height() as u32, img.pixels().to_vec())
        .expect("buffer length matches dimensions");
    let mut out = Cursor::new(Vec::new());
    buf.write_to(&mut out, format)?;
    Ok(out.into_inner())
}

/// Encodes `img` in the format implied by `path` without touching the disk.
pub(crate) fn encode_for_path(img: &GrayImage, path: &Path) -> Result<Vec<u8>> {
    let format = save_format(path)?;
    encode(img, format).map_err(|e| Error::WriteError {
        path: path.into(),
        reason: e.to_string(),
    })
}

/// Writes `img` as 8-bit grayscale PNG or TIFF, chosen by extension.
pub fn save_image(img: &GrayImage, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let bytes = encode_for_path(img, path)?;
    std::fs::write(path, bytes).map_err(|e| Error::WriteError {
        path: path.into(),
        reason: e.to_string(),
    })
}
