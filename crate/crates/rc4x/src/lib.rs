//! RC4 keystream engines in seven hardware-inspired shapes, plus the tooling
//! used to validate and exercise them:
//!
//! - [`rc4`] — the byte-at-a-time engine (plain, and with a post-KSA
//!   key-free shuffle phase before output starts).
//! - [`unrolled`] — a two-bytes-per-step engine that fuses consecutive PRGA
//!   rounds and provably emits the same bytes.
//! - [`multibox`] — snapshot-seeded ensembles of 2 or 4 S-boxes whose
//!   outputs interleave round-robin for higher throughput.
//! - [`cycle`] — clock-count formulas and a half-clock event trace modelling
//!   the dual-edge hardware pipelines.
//! - [`nist`] — the SP 800-22 fifteen-test battery with corpus-level
//!   aggregation (proportion-of-passing and P-value uniformity checks).
//! - [`channel`] — an encrypted, frame-based TCP channel that binds key and
//!   design choice at handshake time.

pub mod channel;
pub mod cycle;
pub mod design;
pub mod multibox;
pub mod nist;
pub mod rc4;
pub mod unrolled;

pub use design::{keystream, DesignConfig, DesignId};
pub use rc4::{KeyMaterial, Phase, SBoxState};

use thiserror::Error;

/// Errors from key handling and engine state machines.
#[derive(Debug, Error)]
pub enum Rc4Error {
    #[error("key must be 1..=256 bytes, got {len}")]
    InvalidKeyLength { len: usize },
    #[error("key is not a valid hex string")]
    InvalidHexKey,
    #[error("operation requires phase {expected:?}, state is in {actual:?}")]
    WrongPhase { expected: Phase, actual: Phase },
    #[error("unknown design {0:?} (expected d1..d7)")]
    UnknownDesign(String),
    #[error("design {0} does not use multiple S-boxes")]
    NotMultiBox(DesignId),
    #[error("fused swap indices violate the single-step model (i_n == i_n+1)")]
    ContradictorySwap,
    #[error("byte count must be positive")]
    ZeroLength,
}
