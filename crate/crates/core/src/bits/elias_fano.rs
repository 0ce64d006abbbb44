use super::bitvector::{read_bits, select_in_word, BitWriter};
use crate::codec::{ByteReader, ByteWriter};
use crate::error::{ContainerError, DecodeError};

/// One select sample is kept for every this many set bits of the upper part.
const SELECT_SAMPLE: usize = 1024;

/// Elias-Fano encoding of a non-decreasing sequence of integers below `universe`.
///
/// Each value is split into `low_width` low bits, stored packed, and a high
/// part stored in unary: value `i` sets bit `(v >> low_width) + i` of the
/// upper bitvector. Access is a select on the upper bits plus one packed read.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliasFano {
    len: usize,
    universe: u64,
    low_width: u32,
    low: Vec<u64>,
    high_len: usize,
    high: Vec<u64>,
    samples: Vec<u64>,
}

fn low_width_for(len: usize, universe: u64) -> u32 {
    if len == 0 {
        return 0;
    }
    let q = universe / len as u64;
    if q == 0 {
        0
    } else {
        63 - q.leading_zeros()
    }
}

fn high_len_for(len: usize, universe: u64, low_width: u32) -> usize {
    len + (universe >> low_width) as usize + 1
}

fn build_samples(high: &[u64], len: usize) -> Vec<u64> {
    let mut samples = Vec::with_capacity(len.div_ceil(SELECT_SAMPLE));
    let mut seen = 0usize;
    for (wi, &w) in high.iter().enumerate() {
        let ones = w.count_ones() as usize;
        // next sampled rank that falls inside this word
        let mut next = seen.div_ceil(SELECT_SAMPLE) * SELECT_SAMPLE;
        while next < seen + ones {
            let pos = wi * 64 + select_in_word(w, (next - seen) as u32) as usize;
            samples.push(pos as u64);
            next += SELECT_SAMPLE;
        }
        seen += ones;
    }
    samples
}

impl EliasFano {
    /// Encodes `values`, which must be non-decreasing and below `universe`.
    pub fn new(values: &[u64], universe: u64) -> Result<Self, ContainerError> {
        let len = values.len();
        let mut prev = 0;
        for (index, &value) in values.iter().enumerate() {
            if value < prev {
                return Err(ContainerError::NotMonotone { index, prev, value });
            }
            if value >= universe {
                return Err(ContainerError::OutsideUniverse { index, value, universe });
            }
            prev = value;
        }
        let low_width = low_width_for(len, universe);
        let high_len = high_len_for(len, universe, low_width);
        let mut high = vec![0u64; high_len.div_ceil(64)];
        let mut low = BitWriter::with_capacity(len * low_width as usize);
        let low_mask = if low_width == 0 { 0 } else { (1u64 << low_width) - 1 };
        for (i, &v) in values.iter().enumerate() {
            low.push_bits(v & low_mask, low_width);
            let pos = (v >> low_width) as usize + i;
            high[pos / 64] |= 1 << (pos % 64);
        }
        let samples = build_samples(&high, len);
        Ok(Self {
            len,
            universe,
            low_width,
            low: low.finish().1,
            high_len,
            high,
            samples,
        })
    }

    /// Encodes with the tightest universe, one past the last value.
    pub fn from_sorted(values: &[u64]) -> Result<Self, ContainerError> {
        let universe = values.last().map_or(0, |&v| v.saturating_add(1));
        Self::new(values, universe)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn universe(&self) -> u64 {
        self.universe
    }

    #[inline]
    fn select_high(&self, i: usize) -> usize {
        let mut pos = self.samples[i / SELECT_SAMPLE] as usize;
        let mut k = (i % SELECT_SAMPLE) as u32;
        let mut wi = pos / 64;
        let mut w = self.high[wi] & (u64::MAX << (pos % 64));
        loop {
            let ones = w.count_ones();
            if k < ones {
                pos = wi * 64 + select_in_word(w, k) as usize;
                return pos;
            }
            k -= ones;
            wi += 1;
            w = self.high[wi];
        }
    }

    #[inline]
    fn next_high_one(&self, after: usize) -> usize {
        let start = after + 1;
        let mut wi = start / 64;
        let mut w = self.high[wi] & (u64::MAX << (start % 64));
        while w == 0 {
            wi += 1;
            w = self.high[wi];
        }
        wi * 64 + w.trailing_zeros() as usize
    }

    #[inline]
    fn low_at(&self, i: usize) -> u64 {
        read_bits(&self.low, i * self.low_width as usize, self.low_width)
    }

    #[inline]
    pub fn access(&self, i: usize) -> u64 {
        assert!(i < self.len, "index {i} out of range {}", self.len);
        let hi = (self.select_high(i) - i) as u64;
        (hi << self.low_width) | self.low_at(i)
    }

    /// `(access(i), access(i + 1))` with a single select.
    #[inline]
    pub fn pair(&self, i: usize) -> (u64, u64) {
        assert!(i + 1 < self.len, "index {} out of range {}", i + 1, self.len);
        let p0 = self.select_high(i);
        let p1 = self.next_high_one(p0);
        let a = (((p0 - i) as u64) << self.low_width) | self.low_at(i);
        let b = (((p1 - i - 1) as u64) << self.low_width) | self.low_at(i + 1);
        (a, b)
    }

    /// `access(i + 1) - access(i)`.
    #[inline]
    pub fn diff(&self, i: usize) -> u64 {
        let (a, b) = self.pair(i);
        b - a
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.len).map(|i| self.access(i))
    }

    /// Serialized size: length and universe headers, low bits, upper bits and select samples.
    pub fn size_in_bits(&self) -> u64 {
        128 + 64 * (self.low.len() + self.high.len() + self.samples.len()) as u64
    }

    pub(crate) fn write_to(&self, w: &mut ByteWriter) {
        w.u64(self.len as u64);
        w.u64(self.universe);
        w.words(&self.low);
        w.words(&self.high);
        w.words(&self.samples);
    }

    pub(crate) fn read_from(r: &mut ByteReader<'_>) -> Result<Self, DecodeError> {
        let len = r.len(0)?;
        let universe = r.u64()?;
        if len > 0 && universe == 0 {
            return Err(DecodeError::Corrupt("non-empty Elias-Fano with zero universe".into()));
        }
        let low_width = low_width_for(len, universe);
        let low_bits = len
            .checked_mul(low_width as usize)
            .ok_or_else(|| DecodeError::Corrupt("Elias-Fano size overflows".into()))?;
        let low = r.words(low_bits.div_ceil(64))?;
        let high_len = len
            .checked_add((universe >> low_width) as usize)
            .and_then(|x| x.checked_add(1))
            .ok_or_else(|| DecodeError::Corrupt("Elias-Fano size overflows".into()))?;
        let high = r.words(high_len.div_ceil(64))?;
        let samples = r.words(len.div_ceil(SELECT_SAMPLE))?;
        let ones: usize = high.iter().map(|w| w.count_ones() as usize).sum();
        if ones != len {
            return Err(DecodeError::Corrupt(format!(
                "Elias-Fano upper bits hold {ones} ones, expected {len}"
            )));
        }
        if samples != build_samples(&high, len) {
            return Err(DecodeError::Corrupt("Elias-Fano select samples mismatch".into()));
        }
        Ok(Self {
            len,
            universe,
            low_width,
            low,
            high_len,
            high,
            samples,
        })
    }

    #[cfg(test)]
    pub(crate) fn high_len(&self) -> usize {
        self.high_len
    }
}
