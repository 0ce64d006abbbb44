#![allow(dead_code)]

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const MILLION: usize = 1_000_000;

/// Distinct uniform 64-bit keys.
pub fn keys(count: usize, seed: u64) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::with_capacity(count);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let k: u64 = rng.gen();
        if seen.insert(k) {
            out.push(k);
        }
    }
    out
}

/// Asserts that `values` is a permutation of `0..values.len()`.
pub fn assert_permutation(values: &[u64]) {
    let mut seen = vec![false; values.len()];
    for (i, &v) in values.iter().enumerate() {
        assert!((v as usize) < values.len(), "key #{i} maps to {v}, outside the range");
        assert!(!seen[v as usize], "key #{i} collides at {v}");
        seen[v as usize] = true;
    }
}
