//! Matches the gray-level distribution of one image to another.
//!
//! ```bash
//! cargo run -p svdna --example histogram_match
//! ```

use svdna::raster::{matching_lut, Histogram256};
use svdna::{histogram_match, GrayImage};

fn main() -> svdna::Result<()> {
    let dark = GrayImage::from_fn(64, 64, |r, c| ((r + c) / 2) as u8)?;
    let bright = GrayImage::from_fn(64, 64, |r, c| 128 + ((r * c) % 128) as u8)?;

    let matched = histogram_match(&dark, &bright);
    let mean = |img: &GrayImage| img.pixels().iter().map(|&p| p as f64).sum::<f64>() / img.len() as f64;
    println!("mean  source {:.2}  reference {:.2}  matched {:.2}", mean(&dark), mean(&bright), mean(&matched));

    let lut = matching_lut(&Histogram256::of(&dark), &Histogram256::of(&bright));
    println!("lookup for levels 0, 16, 32, 48, 63: {:?}", [0, 16, 32, 48, 63].map(|v| lut[v]));
    Ok(())
}
