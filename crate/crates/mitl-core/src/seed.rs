//! Seed derivation for independent deterministic RNG streams.
//!
//! Every random choice in the crate flows from an explicit integer seed.
//! Where one configured seed has to drive several independent streams (per
//! shadow model, per sweep replicate, head re-initialization), the substream
//! seed is derived by hashing the base seed together with a role label, so
//! streams cannot collide or alias under seed arithmetic done by callers.

use sha2::{Digest, Sha256};

/// Derive a substream seed from `base` and a role label.
///
/// Stable across runs and platforms: the result is the first eight bytes of
/// `SHA-256(base_le || label)` interpreted little-endian.
pub fn derive_seed(base: u64, label: &str) -> u64 {
    let mut hasher = Sha256::new();
    hasher.update(base.to_le_bytes());
    hasher.update(label.as_bytes());
    let digest = hasher.finalize();
    u64::from_le_bytes(digest[..8].try_into().expect("digest is 32 bytes"))
}
