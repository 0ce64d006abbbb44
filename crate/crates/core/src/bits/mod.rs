//! Bit-level containers: plain bitvector, fixed-width integer vector,
//! Elias-Fano monotone sequence and dense-coded sequence.
//!
//! All containers are immutable once built (the bitvector aside) and use
//! 64-bit words with little-endian bit order.

mod bitvector;
mod compact;
mod dense_code;
mod elias_fano;

pub use bitvector::BitVector;
pub use compact::{width_for, CompactVector};
pub use dense_code::DenseCodeSequence;
pub use elias_fano::EliasFano;
