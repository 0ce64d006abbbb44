use thiserror::Error;

/// Failures while decoding a serialized function or container.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum DecodeError {
    #[error("bad magic: expected \"PTHS\", found {0:?}")]
    BadMagic([u8; 4]),
    #[error("unsupported format version {0}")]
    UnsupportedVersion(u8),
    #[error("truncated input: needed {needed} more bytes at offset {offset}")]
    Truncated { offset: usize, needed: usize },
    #[error("corrupt payload: {0}")]
    Corrupt(String),
}

/// Failures while building a function.
#[derive(Debug, Error, PartialEq)]
pub enum BuildError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("cannot build over an empty key set")]
    EmptyKeySet,
    #[error("every seed attempt found colliding hashes inside a bucket; duplicate keys suspected")]
    DuplicateKeys,
    #[error("exhausted {attempts} seed attempts (last failure: {last})")]
    SeedsExhausted { attempts: u32, last: SeedFailure },
}

/// Reason a single seed attempt was abandoned.
#[derive(Debug, Clone, Copy, Error, PartialEq, Eq)]
pub enum SeedFailure {
    #[error("two keys of bucket {bucket} share a 64-bit hash")]
    InBucketDuplicate { bucket: u64 },
    #[error("bucket {bucket} exceeded the pilot cap {cap}")]
    PilotCapExceeded { bucket: u64, cap: u64 },
}

/// Rejected input when building a bit-level container.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ContainerError {
    #[error("value {value} at index {index} does not fit in {width} bits")]
    ValueTooWide { index: usize, value: u64, width: u32 },
    #[error("width {0} outside 1..=64")]
    BadWidth(u32),
    #[error("sequence decreases at index {index}: {prev} > {value}")]
    NotMonotone { index: usize, prev: u64, value: u64 },
    #[error("value {value} at index {index} is not below universe {universe}")]
    OutsideUniverse { index: usize, value: u64, universe: u64 },
}
