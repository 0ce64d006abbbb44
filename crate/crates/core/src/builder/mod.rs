//! Construction: map keys to buckets, order buckets by falling size, search
//! pilots against the occupancy bitmap, then build the free array. A seed
//! that fails at any step is replaced by the next one.

mod config;
mod free;
mod map;
mod search;

use std::time::{Duration, Instant};

pub use config::{table_size, BuildConfig};
pub use free::{fill_free, free_entries, FreeSlots};
pub use map::{map_keys, order_by_size, BucketedHashes};
pub use search::{expected_pilot, search, PilotsTable, SearchOutcome, SearchStats, TIME_CHECKPOINTS};

use crate::error::{BuildError, SeedFailure};
use crate::hashing::{BucketParams, Key, KeyKind, SeededHasher};

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct PhaseTimings {
    pub map: Duration,
    pub search: Duration,
    pub free: Duration,
}

/// Everything a successful construction produced, before encoding.
#[derive(Debug, Clone)]
pub struct BuildOutput {
    pub seed: u64,
    pub n: u64,
    pub key_kind: KeyKind,
    pub params: BucketParams,
    pub pilots: PilotsTable,
    pub free: FreeSlots,
    pub buckets: BucketedHashes,
    pub stats: SearchStats,
    /// Seeds tried, including the successful one.
    pub attempts: u32,
    pub timings: PhaseTimings,
}

/// Runs map, order, search and free-array construction with seed retries.
pub fn build_unencoded<K: Key + Sync>(keys: &[K], cfg: &BuildConfig) -> Result<BuildOutput, BuildError> {
    cfg.validate()?;
    if keys.is_empty() {
        return Err(BuildError::EmptyKeySet);
    }
    let n = keys.len() as u64;
    let n_prime = table_size(n, cfg.alpha);
    let params = BucketParams::new(n, n_prime, cfg.c);

    let mut last = None;
    let mut map_failures = 0;
    for attempt in 0..cfg.max_seed_attempts {
        let seed = cfg.seed.wrapping_add(attempt as u64);
        let hasher = SeededHasher::new(seed);
        let mut timings = PhaseTimings::default();

        let t = Instant::now();
        let buckets = match map_keys(keys, &hasher, &params, cfg.exec) {
            Ok(b) => b,
            Err(e) => {
                map_failures += 1;
                last = Some(e);
                continue;
            }
        };
        timings.map = t.elapsed();

        let t = Instant::now();
        let outcome = match search(&buckets, n_prime, &hasher, cfg.pilot_cap) {
            Ok(o) => o,
            Err(e) => {
                last = Some(e);
                continue;
            }
        };
        timings.search = t.elapsed();

        let t = Instant::now();
        let free = fill_free(&outcome.taken, n, n_prime);
        timings.free = t.elapsed();

        return Ok(BuildOutput {
            seed,
            n,
            key_kind: K::KIND,
            params,
            pilots: outcome.pilots,
            free,
            buckets,
            stats: outcome.stats,
            attempts: attempt + 1,
            timings,
        });
    }
    if map_failures == cfg.max_seed_attempts {
        return Err(BuildError::DuplicateKeys);
    }
    Err(BuildError::SeedsExhausted {
        attempts: cfg.max_seed_attempts,
        last: last.unwrap_or(SeedFailure::InBucketDuplicate { bucket: 0 }),
    })
}
