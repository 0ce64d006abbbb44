//! The queryable function and its on-disk format.
//!
//! Layout (all integers little-endian):
//!
//! ```text
//! "PTHS" | version u8 = 1 | encoder u8 | key kind u8 | reserved u8
//! seed u64 | n u64 | n_prime u64 | m u64 | p2 u64
//! pilots: encoder tag u8, then the scheme payload
//! free:   Elias-Fano payload (length 0 when n_prime == n)
//! ```

use crate::builder::{build_unencoded, BuildConfig, BuildOutput, FreeSlots};
use crate::codec::{ByteReader, ByteWriter};
use crate::encoders::{EncodedPilots, EncoderKind};
use crate::error::{BuildError, DecodeError};
use crate::exec::{self, Exec};
use crate::hashing::{BucketParams, Key, KeyHash, KeyKind, SeededHasher};

pub const MAGIC: [u8; 4] = *b"PTHS";
pub const FORMAT_VERSION: u8 = 1;
/// Fixed header size in bytes.
pub const HEADER_BYTES: usize = 8 + 5 * 8;

/// Minimal perfect hash function over a static key set.
///
/// Evaluating a key outside the construction set returns some value in
/// `[0, n)`; membership is not checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mphf {
    hasher: SeededHasher,
    n: u64,
    key_kind: KeyKind,
    params: BucketParams,
    pilots: EncodedPilots,
    free: FreeSlots,
}

impl Mphf {
    /// Builds over distinct `keys` and encodes the pilots with `cfg.encoder`.
    pub fn build<K: Key + Sync>(keys: &[K], cfg: &BuildConfig) -> Result<Self, BuildError> {
        let out = build_unencoded(keys, cfg)?;
        Ok(Self::from_output(&out, cfg.encoder))
    }

    /// Encodes an unencoded construction with the given scheme. One search
    /// can be encoded any number of ways.
    pub fn from_output(out: &BuildOutput, encoder: EncoderKind) -> Self {
        Self {
            hasher: SeededHasher::new(out.seed),
            n: out.n,
            key_kind: out.key_kind,
            params: out.params,
            pilots: EncodedPilots::encode(out.pilots.as_slice(), encoder, out.params.p2 as usize),
            free: out.free.clone(),
        }
    }

    pub fn seed(&self) -> u64 {
        self.hasher.seed()
    }

    pub fn num_keys(&self) -> u64 {
        self.n
    }

    pub fn table_size(&self) -> u64 {
        self.params.n_prime
    }

    pub fn params(&self) -> &BucketParams {
        &self.params
    }

    pub fn encoder(&self) -> EncoderKind {
        self.pilots.kind()
    }

    pub fn key_kind(&self) -> KeyKind {
        self.key_kind
    }

    pub fn pilots(&self) -> &EncodedPilots {
        &self.pilots
    }

    pub fn free_slots(&self) -> &FreeSlots {
        &self.free
    }

    /// Table position of a key before re-ranking, in `[0, n_prime)`.
    #[inline]
    pub fn position<K: Key + ?Sized>(&self, key: &K) -> u64 {
        self.position_of_hash(self.hasher.hash_key(key))
    }

    #[inline]
    fn position_of_hash(&self, h: KeyHash) -> u64 {
        let bucket = self.params.bucket_of(h);
        let pilot = self.pilots.access(bucket as usize);
        self.params.position(h, self.hasher.hash_pilot(pilot))
    }

    #[inline]
    pub fn evaluate<K: Key + ?Sized>(&self, key: &K) -> u64 {
        let p = self.position(key);
        if p < self.n {
            p
        } else {
            self.free.get((p - self.n) as usize)
        }
    }

    /// Evaluates every key into `out`.
    pub fn evaluate_batch<K: Key + Sync>(&self, keys: &[K], out: &mut [u64], exec: Exec) {
        exec::map_into(exec, keys, out, |k| self.evaluate(k));
    }

    pub fn evaluate_all<K: Key + Sync>(&self, keys: &[K], exec: Exec) -> Vec<u64> {
        let mut out = vec![0; keys.len()];
        self.evaluate_batch(keys, &mut out, exec);
        out
    }

    pub fn header_bits(&self) -> u64 {
        HEADER_BYTES as u64 * 8
    }

    /// Total serialized size in bits.
    pub fn size_in_bits(&self) -> u64 {
        self.header_bits() + self.pilots.measure_bits() + self.free.size_in_bits()
    }

    pub fn bits_per_key(&self) -> f64 {
        self.size_in_bits() as f64 / self.n as f64
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut w = ByteWriter::new();
        w.bytes(&MAGIC);
        w.u8(FORMAT_VERSION);
        w.u8(self.pilots.kind().tag());
        w.u8(self.key_kind as u8);
        w.u8(0);
        w.u64(self.hasher.seed());
        w.u64(self.n);
        w.u64(self.params.n_prime);
        w.u64(self.params.m);
        w.u64(self.params.p2);
        self.pilots.write_to(&mut w);
        self.free.write_to(&mut w);
        w.into_inner()
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, DecodeError> {
        let mut r = ByteReader::new(bytes);
        let magic: [u8; 4] = r.take(4)?.try_into().unwrap();
        if magic != MAGIC {
            return Err(DecodeError::BadMagic(magic));
        }
        let version = r.u8()?;
        if version != FORMAT_VERSION {
            return Err(DecodeError::UnsupportedVersion(version));
        }
        let encoder_tag = r.u8()?;
        let kind_tag = r.u8()?;
        let _reserved = r.u8()?;
        let seed = r.u64()?;
        let n = r.u64()?;
        let n_prime = r.u64()?;
        let m = r.u64()?;
        let p2 = r.u64()?;

        let key_kind =
            KeyKind::from_tag(kind_tag).ok_or_else(|| DecodeError::Corrupt(format!("unknown key kind {kind_tag}")))?;
        if n == 0 || n_prime < n {
            return Err(DecodeError::Corrupt(format!("n = {n}, n_prime = {n_prime}")));
        }
        let params = BucketParams::from_parts(n_prime, m, p2)
            .ok_or_else(|| DecodeError::Corrupt(format!("inconsistent bucket layout m = {m}, p2 = {p2}")))?;
        let pilots = EncodedPilots::read_from(&mut r)?;
        if pilots.kind().tag() != encoder_tag {
            return Err(DecodeError::Corrupt(
                "header encoder differs from payload encoder".into(),
            ));
        }
        if pilots.len() as u64 != m {
            return Err(DecodeError::Corrupt(format!("{} pilots for {m} buckets", pilots.len())));
        }
        let free = FreeSlots::read_from(&mut r, n, n_prime)?;
        if !r.is_empty() {
            return Err(DecodeError::Corrupt(format!(
                "{} trailing bytes after offset {}",
                bytes.len() - r.position(),
                r.position()
            )));
        }
        Ok(Self {
            hasher: SeededHasher::new(seed),
            n,
            key_kind,
            params,
            pilots,
            free,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn keys(n: u64) -> Vec<u64> {
        (0..n)
            .map(|i| crate::hashing::mix64(i.wrapping_mul(31) ^ 0xFACE))
            .collect()
    }

    #[test]
    fn three_keys() {
        let ks = ["a", "b", "c"];
        let f = Mphf::build(&ks, &BuildConfig::new(7.0, 1.0)).unwrap();
        let mut img: Vec<u64> = ks.iter().map(|k| f.evaluate(*k)).collect();
        img.sort_unstable();
        assert_eq!(img, vec![0, 1, 2]);
        assert_eq!(f.key_kind(), KeyKind::Bytes);
    }

    #[test]
    fn singleton() {
        for alpha in [1.0, 0.5] {
            let f = Mphf::build(&[77u64], &BuildConfig::new(7.0, alpha)).unwrap();
            assert_eq!(f.evaluate(&77u64), 0);
        }
    }

    #[test]
    fn alpha_one_has_no_free_bits_beyond_empty_header() {
        let f = Mphf::build(&keys(5000), &BuildConfig::new(5.0, 1.0)).unwrap();
        assert!(f.free_slots().is_empty());
        assert_eq!(f.free_slots().size_in_bits(), FreeSlots::empty().size_in_bits());
    }

    #[test]
    fn encoders_agree() {
        let ks = keys(20_000);
        let out = build_unencoded(&ks, &BuildConfig::new(4.0, 0.94)).unwrap();
        let reference = Mphf::from_output(&out, EncoderKind::Compact).evaluate_all(&ks, Exec::Sequential);
        for kind in EncoderKind::ALL {
            let f = Mphf::from_output(&out, kind);
            assert_eq!(f.evaluate_all(&ks, Exec::default()), reference, "{kind}");
        }
        let mut sorted = reference;
        sorted.sort_unstable();
        assert_eq!(sorted, (0..20_000).collect::<Vec<_>>());
    }

    #[test]
    fn serialization_round_trip() {
        let ks = keys(10_000);
        for kind in EncoderKind::ALL {
            let f = Mphf::build(&ks, &BuildConfig::new(6.0, 0.9).with_encoder(kind)).unwrap();
            let bytes = f.to_bytes();
            assert_eq!(bytes.len() as u64 * 8, f.size_in_bits());
            let g = Mphf::from_bytes(&bytes).unwrap();
            assert_eq!(g, f);
            assert_eq!(g.to_bytes(), bytes);
            for probe in 0..1000u64 {
                assert_eq!(g.evaluate(&probe), f.evaluate(&probe));
            }
        }
    }

    #[test]
    fn decode_errors_are_distinct() {
        let f = Mphf::build(&keys(1000), &BuildConfig::default()).unwrap();
        let bytes = f.to_bytes();

        let mut bad = bytes.clone();
        bad[0] = b'X';
        assert!(matches!(Mphf::from_bytes(&bad), Err(DecodeError::BadMagic(_))));

        let mut bad = bytes.clone();
        bad[4] = 9;
        assert_eq!(Mphf::from_bytes(&bad), Err(DecodeError::UnsupportedVersion(9)));

        for cut in [0, 3, 20, HEADER_BYTES, bytes.len() / 2, bytes.len() - 1] {
            assert!(
                matches!(Mphf::from_bytes(&bytes[..cut]), Err(DecodeError::Truncated { .. })),
                "cut at {cut}"
            );
        }

        let mut bad = bytes.clone();
        bad.push(0);
        assert!(matches!(Mphf::from_bytes(&bad), Err(DecodeError::Corrupt(_))));

        let mut bad = bytes.clone();
        bad[5] = (bad[5] + 1) % 7;
        assert!(matches!(Mphf::from_bytes(&bad), Err(DecodeError::Corrupt(_))));
    }
}
