//! Minimal perfect hashing by pilot search.
//!
//! Keys are hashed once and spread over `m = ceil(c n / log2 n)` buckets with
//! a skewed mapping; buckets are then processed from largest to smallest and
//! each gets the smallest integer pilot whose hash, XORed into the key hashes,
//! sends every key of the bucket to a free slot of a table of size
//! `n' = n / alpha`. The resulting pilots table is small-valued and compresses
//! well; [`encoders`] provides several representations. Keys landing past
//! `n` are re-ranked through a compressed free array so the output is
//! always in `[0, n)`.
//!
//! ```
//! use pthash::{BuildConfig, EncoderKind, Mphf};
//!
//! let keys: Vec<u64> = (0..10_000).map(|i| i * 2654435761).collect();
//! let cfg = BuildConfig::new(7.0, 0.99).with_encoder(EncoderKind::DictionaryDictionary);
//! let f = Mphf::build(&keys, &cfg).unwrap();
//! let mut seen = vec![false; keys.len()];
//! for k in &keys {
//!     let i = f.evaluate(k) as usize;
//!     assert!(!seen[i]);
//!     seen[i] = true;
//! }
//! ```

pub mod analysis;
pub mod bits;
pub mod builder;
mod codec;
pub mod encoders;
pub mod error;
pub mod exec;
pub mod hashing;
pub mod mphf;

pub use builder::{build_unencoded, BuildConfig, BuildOutput};
pub use encoders::{EncodedPilots, EncoderKind};
pub use error::{BuildError, DecodeError, SeedFailure};
pub use exec::Exec;
pub use hashing::{Key, KeyHash, KeyKind};
pub use mphf::Mphf;
