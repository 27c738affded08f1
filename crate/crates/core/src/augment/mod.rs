//! Training-time augmentation policy: per image, either leave it alone
//! (probability `1/n`) or restyle it toward a uniformly chosen target domain
//! with a random style image and a random `k`.

mod policy;
mod registry;
mod rng;

pub use policy::{apply_decision, sample_decision, AugmentDecision, Sampler, StyleCache};
pub use registry::{discover_images, Domain, DomainRegistry, KRange, RegistryConfig, DEFAULT_SEED};
pub use rng::{derive_stream, mix64, stream_seed, RngStream};
