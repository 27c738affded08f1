//! Noise statistics, set-level noise alignment, and dice evaluation.

mod alignment;
mod dice;
mod noise;

pub use alignment::domain_alignment;
pub use dice::{dice, dice_report, dice_report_pooled, DiceReport, LabelMask, OverlapCounts};
pub use noise::{
    immerkaer_sigma, immerkaer_sigma_of, noise_profile, snr, snr_of, wavelet_sigma, wavelet_sigma_of, NoiseStats,
    MAD_TO_SIGMA,
};
