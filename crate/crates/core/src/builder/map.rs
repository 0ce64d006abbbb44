use crate::error::SeedFailure;
use crate::exec::{self, Exec};
use crate::hashing::{BucketParams, Key, KeyHash, SeededHasher};

const COARSE_BITS: u32 = 8;

/// Key hashes grouped by bucket, plus the order buckets are searched in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BucketedHashes {
    offsets: Vec<usize>,
    hashes: Vec<KeyHash>,
    order: Vec<usize>,
}

impl BucketedHashes {
    /// Groups hashes by a counting scatter on `bucket_of`; within a bucket
    /// hashes keep input order. Fails on a repeated hash inside a bucket.
    fn group(hashes: &[u64], m: usize, bucket_of: impl Fn(u64) -> usize) -> Result<Self, SeedFailure> {
        let mut offsets = vec![0usize; m + 1];
        for &h in hashes {
            offsets[bucket_of(h) + 1] += 1;
        }
        for i in 0..m {
            offsets[i + 1] += offsets[i];
        }
        // two-level scatter: coarse groups of consecutive buckets first, so
        // the fine pass touches one cache-sized window at a time
        let shift = (usize::BITS - m.leading_zeros()).saturating_sub(COARSE_BITS);
        let groups = (m >> shift) + 1;
        let mut cursor = vec![0usize; groups];
        for g in 1..groups {
            cursor[g] = offsets[(g << shift).min(m)];
        }
        let mut coarse = vec![0u64; hashes.len()];
        for &h in hashes {
            let slot = &mut cursor[bucket_of(h) >> shift];
            coarse[*slot] = h;
            *slot += 1;
        }
        let mut cursor = offsets[..m].to_vec();
        let mut grouped = vec![KeyHash(0); hashes.len()];
        for &h in &coarse {
            let slot = &mut cursor[bucket_of(h)];
            grouped[*slot] = KeyHash(h);
            *slot += 1;
        }
        Self::finish(offsets, grouped)
    }

    fn finish(offsets: Vec<usize>, mut hashes: Vec<KeyHash>) -> Result<Self, SeedFailure> {
        for (b, w) in offsets.windows(2).enumerate() {
            if has_duplicate(&mut hashes[w[0]..w[1]]) {
                return Err(SeedFailure::InBucketDuplicate { bucket: b as u64 });
            }
        }
        let sizes: Vec<usize> = offsets.windows(2).map(|w| w[1] - w[0]).collect();
        Ok(Self {
            offsets,
            hashes,
            order: order_by_size(&sizes),
        })
    }

    /// Builds directly from per-bucket hash lists.
    pub fn from_buckets(buckets: Vec<Vec<KeyHash>>) -> Result<Self, SeedFailure> {
        let mut offsets = Vec::with_capacity(buckets.len() + 1);
        offsets.push(0);
        for b in &buckets {
            offsets.push(offsets.last().unwrap() + b.len());
        }
        Self::finish(offsets, buckets.concat())
    }

    pub fn num_buckets(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn num_keys(&self) -> usize {
        self.hashes.len()
    }

    #[inline]
    pub fn bucket(&self, b: usize) -> &[KeyHash] {
        &self.hashes[self.offsets[b]..self.offsets[b + 1]]
    }

    #[inline]
    pub fn size(&self, b: usize) -> usize {
        self.offsets[b + 1] - self.offsets[b]
    }

    pub fn sizes(&self) -> impl Iterator<Item = usize> + '_ {
        self.offsets.windows(2).map(|w| w[1] - w[0])
    }

    /// Bucket ids by non-increasing size, ties by ascending id.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn max_size(&self) -> usize {
        self.order.first().map_or(0, |&b| self.size(b))
    }
}

/// Small buckets are compared pairwise in place; larger ones get sorted.
fn has_duplicate(bucket: &mut [KeyHash]) -> bool {
    if bucket.len() <= 16 {
        return (1..bucket.len()).any(|i| bucket[..i].contains(&bucket[i]));
    }
    bucket.sort_unstable();
    bucket.windows(2).any(|w| w[0] == w[1])
}

/// Stable ordering of bucket ids by non-increasing size.
pub fn order_by_size(sizes: &[usize]) -> Vec<usize> {
    let max = sizes.iter().copied().max().unwrap_or(0);
    let mut starts = vec![0usize; max + 2];
    for &s in sizes {
        starts[max - s + 1] += 1;
    }
    for i in 0..=max {
        starts[i + 1] += starts[i];
    }
    let mut order = vec![0usize; sizes.len()];
    for (b, &s) in sizes.iter().enumerate() {
        let slot = &mut starts[max - s];
        order[*slot] = b;
        *slot += 1;
    }
    order
}

/// Hashes every key once and groups the hashes by bucket.
pub fn map_keys<K: Key + Sync>(
    keys: &[K],
    hasher: &SeededHasher,
    params: &BucketParams,
    exec: Exec,
) -> Result<BucketedHashes, SeedFailure> {
    let hashes = exec::map_collect(exec, keys, |k| hasher.hash_key(k).0);
    BucketedHashes::group(&hashes, params.m as usize, |h| params.bucket_of(KeyHash(h)) as usize)
}
