//! SVD-based noise transfer between grayscale images.
//!
//! A source image keeps its leading singular triplets (content) and adopts
//! the trailing triplets of a target-domain image (noise); the result is
//! clipped and histogram matched to the target. Around that transform the
//! crate provides three noise statistics, a set-level alignment distance,
//! dice evaluation, and a seeded multi-domain augmentation sampler.
//!
//! ```
//! use svdna::{svdna_transfer, GrayImage, NoiseThreshold, ResizePolicy};
//!
//! let source = GrayImage::from_fn(64, 64, |r, c| ((r + c) * 2) as u8).unwrap();
//! let target = GrayImage::from_fn(64, 64, |r, c| ((r * 31 + c * 17) % 97 + 80) as u8).unwrap();
//! let restyled = svdna_transfer(&source, &target, NoiseThreshold::new(20), ResizePolicy::default()).unwrap();
//! assert_eq!(restyled.dimensions(), source.dimensions());
//! ```

pub mod augment;
pub mod bench;
pub mod cli;
pub mod error;
pub mod metrics;
pub mod raster;
pub mod svd;
pub mod synthetic;
pub mod transfer;

pub use error::{Error, Result};
pub use raster::{histogram_match, load_image, resize_bilinear, save_image, GrayImage, RealMatrix};
pub use svd::{svd, SvdFactors};
pub use transfer::{low_rank, recombine, recombine_residual, svdna_transfer, NoiseThreshold, ResizePolicy};
