use std::time::{Duration, Instant};

use super::map::BucketedHashes;
use crate::bits::BitVector;
use crate::error::SeedFailure;
use crate::hashing::{FastMod, SeededHasher};

/// Raw pilots indexed by bucket id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PilotsTable(pub Vec<u64>);

impl PilotsTable {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }
}

/// Number of timing checkpoints taken across one search.
pub const TIME_CHECKPOINTS: usize = 100;

/// Diagnostics collected while searching.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchStats {
    pub n_prime: u64,
    /// Trials spent per bucket, in processing order. Empty buckets take none.
    pub trials: Vec<u64>,
    /// `(buckets processed, elapsed)` at every 1% of the processing order.
    pub checkpoints: Vec<(usize, Duration)>,
}

/// Output of a successful search.
#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub pilots: PilotsTable,
    pub taken: BitVector,
    pub stats: SearchStats,
}

/// Expected pilot value for a bucket of `size` keys placed into a table at
/// load factor `load`: `(1 / (1 - load))^size - 1`. `None` when `load` is
/// outside `[0, 1)`.
pub fn expected_pilot(load: f64, size: usize) -> Option<f64> {
    if !(0.0..1.0).contains(&load) {
        return None;
    }
    Some((1.0 / (1.0 - load)).powi(size as i32) - 1.0)
}

/// Greedy pilot search: buckets in processing order each get the smallest
/// pilot that sends all their keys to distinct free positions.
pub fn search(
    buckets: &BucketedHashes,
    n_prime: u64,
    hasher: &SeededHasher,
    pilot_cap: u64,
) -> Result<SearchOutcome, SeedFailure> {
    assert!(buckets.num_keys() as u64 <= n_prime, "more keys than table slots");
    let m = buckets.num_buckets();
    let mut pilots = vec![0u64; m];
    let mut taken = BitVector::new(n_prime as usize);
    let modulus = FastMod::new(n_prime);
    let mut trials = Vec::with_capacity(m);
    let mut positions: Vec<usize> = Vec::with_capacity(buckets.max_size());
    let mut checkpoints = Vec::with_capacity(TIME_CHECKPOINTS);
    let step = m.div_ceil(TIME_CHECKPOINTS).max(1);
    let start = Instant::now();

    for (rank, &b) in buckets.order().iter().enumerate() {
        let keys = buckets.bucket(b);
        if keys.is_empty() {
            trials.push(0);
        } else {
            let mut k = 0u64;
            loop {
                if k >= pilot_cap {
                    return Err(SeedFailure::PilotCapExceeded {
                        bucket: b as u64,
                        cap: pilot_cap,
                    });
                }
                let pilot_hash = hasher.hash_pilot(k);
                positions.clear();
                let fits = keys.iter().all(|h| {
                    let p = modulus.reduce(h.0 ^ pilot_hash) as usize;
                    if taken.get(p) || positions.contains(&p) {
                        false
                    } else {
                        positions.push(p);
                        true
                    }
                });
                if fits {
                    break;
                }
                k += 1;
            }
            for &p in &positions {
                taken.set(p, true);
            }
            pilots[b] = k;
            trials.push(k + 1);
        }
        if (rank + 1) % step == 0 || rank + 1 == m {
            checkpoints.push((rank + 1, start.elapsed()));
        }
    }

    Ok(SearchOutcome {
        pilots: PilotsTable(pilots),
        taken,
        stats: SearchStats {
            n_prime,
            trials,
            checkpoints,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hashing::{position, KeyHash};

    #[test]
    fn expected_pilot_values() {
        assert_eq!(expected_pilot(0.0, 7), Some(0.0));
        assert_eq!(expected_pilot(0.5, 1), Some(1.0));
        // (1 / 0.1)^2 - 1
        assert!((expected_pilot(0.9, 2).unwrap() - 99.0).abs() < 1e-9);
        assert_eq!(expected_pilot(1.0, 1), None);
        assert_eq!(expected_pilot(-0.1, 1), None);
    }

    #[test]
    fn single_key_takes_pilot_zero() {
        let b = BucketedHashes::from_buckets(vec![vec![KeyHash(0xABCD)]]).unwrap();
        let out = search(&b, 3, &SeededHasher::new(1), 100).unwrap();
        assert_eq!(out.pilots.0, vec![0]);
        assert_eq!(out.stats.trials, vec![1]);
        assert_eq!(out.taken.count_ones(), 1);
    }

    #[test]
    fn in_bucket_collision_forces_next_pilot() {
        // Brute force two distinct hashes that collide under pilot 0 but not pilot 1.
        let n_prime = 11u64;
        let hasher = SeededHasher::new(17);
        let (z0, z1) = (hasher.hash_pilot(0), hasher.hash_pilot(1));
        let h1 = KeyHash(1000);
        let h2 = (1001..)
            .map(KeyHash)
            .find(|&h2| {
                position(h1, z0, n_prime) == position(h2, z0, n_prime)
                    && position(h1, z1, n_prime) != position(h2, z1, n_prime)
            })
            .unwrap();
        let b = BucketedHashes::from_buckets(vec![vec![h1, h2]]).unwrap();
        let out = search(&b, n_prime, &hasher, 100).unwrap();
        assert_eq!(out.pilots.0, vec![1]);
        assert_eq!(out.stats.trials, vec![2]);
    }

    #[test]
    fn cap_turns_into_seed_failure() {
        // three keys into a table of three slots; pick a seed whose pilot 0 collides
        let hs: Vec<KeyHash> = (1..4).map(|i| KeyHash(i * 0x1234_5678_9ABC)).collect();
        let b = BucketedHashes::from_buckets(vec![hs.clone()]).unwrap();
        let hasher = (0..)
            .map(SeededHasher::new)
            .find(|hasher| {
                let z = hasher.hash_pilot(0);
                let mut ps: Vec<u64> = hs.iter().map(|&h| position(h, z, 3)).collect();
                ps.sort_unstable();
                ps.dedup();
                ps.len() < 3
            })
            .unwrap();
        assert_eq!(
            search(&b, 3, &hasher, 1).unwrap_err(),
            SeedFailure::PilotCapExceeded { bucket: 0, cap: 1 }
        );
        let out = search(&b, 3, &hasher, 10_000).unwrap();
        assert_eq!(out.taken.count_ones(), 3);
        assert!(out.pilots.0[0] >= 1);
    }

    #[test]
    fn empty_buckets_take_pilot_zero_without_trials() {
        let b = BucketedHashes::from_buckets(vec![vec![], vec![KeyHash(5)], vec![]]).unwrap();
        let out = search(&b, 5, &SeededHasher::new(2), 100).unwrap();
        assert_eq!(out.pilots.0[0], 0);
        assert_eq!(out.pilots.0[2], 0);
        assert_eq!(out.stats.trials, vec![1, 0, 0]);
        assert_eq!(out.stats.checkpoints.last().unwrap().0, 3);
    }
}
