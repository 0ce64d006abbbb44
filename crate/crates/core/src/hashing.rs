//! Seeded key hashing, pilot hashing and the skewed bucket mapping.
//!
//! Integer keys go through a seeded 64-bit finalizer (the split-mix
//! "variant 13" mixer), which is a bijection for a fixed seed, so distinct
//! integer keys never collide. Byte-string keys use XXH3-64 with the seed.
//! Both choices are frozen: serialized functions store only the seed.

use xxhash_rust::xxh3::xxh3_64_with_seed;

/// 64-bit hash of a key under a construction seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KeyHash(pub u64);

/// Which key representation a function was built over. Stored in the
/// serialized header.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KeyKind {
    U64 = 0,
    Bytes = 1,
}

impl KeyKind {
    pub fn from_tag(tag: u8) -> Option<Self> {
        match tag {
            0 => Some(Self::U64),
            1 => Some(Self::Bytes),
            _ => None,
        }
    }
}

#[inline]
pub fn mix64(mut x: u64) -> u64 {
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

#[inline]
fn seed_key(seed: u64) -> u64 {
    mix64(seed ^ 0x9E37_79B9_7F4A_7C15)
}

/// Seeded hash function shared by keys and pilots.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeededHasher {
    seed: u64,
    seed_key: u64,
}

impl SeededHasher {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            seed_key: seed_key(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    #[inline]
    pub fn hash_u64(&self, key: u64) -> u64 {
        mix64(key ^ self.seed_key)
    }

    #[inline]
    pub fn hash_bytes(&self, key: &[u8]) -> u64 {
        xxh3_64_with_seed(key, self.seed)
    }

    #[inline]
    pub fn hash_key<K: Key + ?Sized>(&self, key: &K) -> KeyHash {
        key.hash_with(self)
    }

    /// Hash of pilot `k`; the same function integer keys go through.
    #[inline]
    pub fn hash_pilot(&self, k: u64) -> u64 {
        self.hash_u64(k)
    }
}

/// Keys a function can be built over.
pub trait Key {
    const KIND: KeyKind;
    fn hash_with(&self, hasher: &SeededHasher) -> KeyHash;
}

impl Key for u64 {
    const KIND: KeyKind = KeyKind::U64;
    #[inline]
    fn hash_with(&self, hasher: &SeededHasher) -> KeyHash {
        KeyHash(hasher.hash_u64(*self))
    }
}

impl Key for [u8] {
    const KIND: KeyKind = KeyKind::Bytes;
    #[inline]
    fn hash_with(&self, hasher: &SeededHasher) -> KeyHash {
        KeyHash(hasher.hash_bytes(self))
    }
}

impl Key for Vec<u8> {
    const KIND: KeyKind = KeyKind::Bytes;
    #[inline]
    fn hash_with(&self, hasher: &SeededHasher) -> KeyHash {
        KeyHash(hasher.hash_bytes(self))
    }
}

impl Key for str {
    const KIND: KeyKind = KeyKind::Bytes;
    #[inline]
    fn hash_with(&self, hasher: &SeededHasher) -> KeyHash {
        KeyHash(hasher.hash_bytes(self.as_bytes()))
    }
}

impl Key for String {
    const KIND: KeyKind = KeyKind::Bytes;
    #[inline]
    fn hash_with(&self, hasher: &SeededHasher) -> KeyHash {
        KeyHash(hasher.hash_bytes(self.as_bytes()))
    }
}

impl<K: Key + ?Sized> Key for &K {
    const KIND: KeyKind = K::KIND;
    #[inline]
    fn hash_with(&self, hasher: &SeededHasher) -> KeyHash {
        (**self).hash_with(hasher)
    }
}

pub fn hash_key<K: Key + ?Sized>(key: &K, seed: u64) -> KeyHash {
    SeededHasher::new(seed).hash_key(key)
}

pub fn hash_pilot(k: u64, seed: u64) -> u64 {
    SeededHasher::new(seed).hash_pilot(k)
}

/// `(h XOR pilot_hash) mod n_prime`.
#[inline]
pub fn position(h: KeyHash, pilot_hash: u64, n_prime: u64) -> u64 {
    (h.0 ^ pilot_hash) % n_prime
}

/// Remainder by a fixed divisor via one 128-bit reciprocal; exact for every
/// 64-bit numerator and divisor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FastMod {
    d: u64,
    inv: u128,
}

impl FastMod {
    pub fn new(d: u64) -> Self {
        assert!(d > 0, "modulus must be positive");
        Self {
            d,
            inv: (u128::MAX / d as u128).wrapping_add(1),
        }
    }

    pub fn divisor(&self) -> u64 {
        self.d
    }

    #[inline]
    pub fn reduce(&self, a: u64) -> u64 {
        let low = self.inv.wrapping_mul(a as u128);
        let d = self.d as u128;
        let bottom = ((low as u64) as u128 * d) >> 64;
        let top = (low >> 64) * d;
        ((bottom + top) >> 64) as u64
    }
}

/// Table size and bucket layout of one construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BucketParams {
    pub n_prime: u64,
    pub m: u64,
    /// Keys whose hash modulo `n_prime` falls below this go to the dense front buckets.
    pub p1: u64,
    /// Number of front buckets.
    pub p2: u64,
    mod_n_prime: FastMod,
    mod_front: FastMod,
    mod_back: FastMod,
}

/// `ceil(c * n / log2(n))`, and one bucket when `n < 2`.
pub fn bucket_count(n: u64, c: f64) -> u64 {
    if n < 2 {
        return 1;
    }
    let m = (c * n as f64 / (n as f64).log2()).ceil() as u64;
    m.max(1)
}

impl BucketParams {
    pub fn new(n: u64, n_prime: u64, c: f64) -> Self {
        Self::with_buckets(n_prime, bucket_count(n, c))
    }

    pub fn with_buckets(n_prime: u64, m: u64) -> Self {
        assert!(n_prime >= 1 && m >= 1);
        let (p1, p2) = if m == 1 {
            // single bucket: route everything through the front branch
            (n_prime, 1)
        } else if m < 4 {
            ((0.6 * n_prime as f64) as u64, m - 1)
        } else {
            ((0.6 * n_prime as f64) as u64, (0.3 * m as f64) as u64)
        };
        Self {
            n_prime,
            m,
            p1,
            p2,
            mod_n_prime: FastMod::new(n_prime),
            mod_front: FastMod::new(p2),
            // m == 1 never takes the back branch
            mod_back: FastMod::new((m - p2).max(1)),
        }
    }

    /// Reconstructs params from serialized fields, validating consistency.
    pub(crate) fn from_parts(n_prime: u64, m: u64, p2: u64) -> Option<Self> {
        if n_prime == 0 || m == 0 {
            return None;
        }
        let p = Self::with_buckets(n_prime, m);
        (p.p2 == p2).then_some(p)
    }

    #[inline]
    pub fn bucket_of(&self, h: KeyHash) -> u64 {
        if self.mod_n_prime.reduce(h.0) < self.p1 {
            self.mod_front.reduce(h.0)
        } else {
            self.p2 + self.mod_back.reduce(h.0)
        }
    }

    /// `(h XOR pilot_hash) mod n_prime`, same as [`position`].
    #[inline]
    pub fn position(&self, h: KeyHash, pilot_hash: u64) -> u64 {
        self.mod_n_prime.reduce(h.0 ^ pilot_hash)
    }
}
