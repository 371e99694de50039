//! Membership inference attacks against transfer-learning pipelines.
//!
//! The crate covers the full audit loop at desk scale:
//!
//! - [`data`]: dataset loading and the deterministic four-way split that
//!   defines membership ground truth (target/shadow × train/test).
//! - [`models`]: block-structured CNN classifiers, supervised training, and
//!   the two transfer procedures (fine-tuning, feature extraction with a
//!   frozen block prefix).
//! - [`shadow`]: shadow-model orchestration that turns trained models into
//!   labeled attack datasets for the three attack surfaces.
//! - [`attack`]: the binary membership classifier over posterior-derived
//!   features.
//! - [`eval`]: metrics (rank-based AUC, accuracy, precision, recall) and the
//!   three experiment suites (attack effectiveness, frozen-block sweep,
//!   architecture-mismatch transfer).
//!
//! Everything is seed-deterministic: identical inputs and seeds produce
//! bit-identical models, attack datasets, and metrics, for any worker count.
//! The `parallel` feature (on by default) runs the per-sample inner loops on
//! rayon; disabling it falls back to a sequential path that produces the same
//! bits.

pub mod attack;
pub mod data;
pub mod error;
pub mod eval;
pub mod models;
pub(crate) mod par;
pub mod seed;
pub mod shadow;

pub use error::{Error, Result};
