use crate::codec::{ByteReader, ByteWriter};
use crate::error::DecodeError;

/// Plain bitvector over 64-bit words. Bit `i` lives in word `i / 64` at
/// position `i % 64` counted from the least significant bit.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn new(len: usize) -> Self {
        Self {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, bit: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % 64);
        if bit {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Positions of set bits in increasing order.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let tz = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + tz)
            })
        })
    }

    /// Positions of clear bits in `[0, len)` in increasing order.
    pub fn zeros(&self) -> impl Iterator<Item = usize> + '_ {
        let len = self.len;
        self.words.iter().enumerate().flat_map(move |(wi, &w)| {
            let mut w = !w;
            if wi * 64 + 64 > len {
                let valid = len - wi * 64;
                w &= (1u64 << valid) - 1;
            }
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let tz = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + tz)
            })
        })
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn size_in_bits(&self) -> u64 {
        64 + 64 * self.words.len() as u64
    }

    /// Length as u64 followed by the little-endian words.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut w = ByteWriter::default();
        self.write_to(&mut w);
        w.into_inner()
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, DecodeError> {
        let mut r = ByteReader::new(bytes);
        let bv = Self::read_from(&mut r)?;
        if !r.is_empty() {
            return Err(DecodeError::Corrupt("trailing bytes after bitvector".into()));
        }
        Ok(bv)
    }

    pub(crate) fn write_to(&self, w: &mut ByteWriter) {
        w.u64(self.len as u64);
        w.words(&self.words);
    }

    pub(crate) fn read_from(r: &mut ByteReader<'_>) -> Result<Self, DecodeError> {
        let len = r.len(0)?;
        let words = r.words(len.div_ceil(64))?;
        if len % 64 != 0 {
            if let Some(&last) = words.last() {
                if last >> (len % 64) != 0 {
                    return Err(DecodeError::Corrupt("bits set beyond bitvector length".into()));
                }
            }
        }
        Ok(Self { len, words })
    }
}

/// Append-only bit stream; values are written least significant bit first.
#[derive(Debug, Clone, Default)]
pub(crate) struct BitWriter {
    len: usize,
    words: Vec<u64>,
}

impl BitWriter {
    pub fn with_capacity(bits: usize) -> Self {
        Self {
            len: 0,
            words: Vec::with_capacity(bits.div_ceil(64)),
        }
    }

    pub fn push_bits(&mut self, value: u64, width: u32) {
        debug_assert!(width <= 64);
        debug_assert!(width == 64 || value >> width == 0);
        if width == 0 {
            return;
        }
        let off = (self.len % 64) as u32;
        if off == 0 {
            self.words.push(value);
        } else {
            *self.words.last_mut().unwrap() |= value << off;
            if off + width > 64 {
                self.words.push(value >> (64 - off));
            }
        }
        self.len += width as usize;
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn finish(self) -> (usize, Vec<u64>) {
        (self.len, self.words)
    }
}

/// Reads `width` bits starting at bit `pos`; bits past the last word read as zero.
#[inline]
pub(crate) fn read_bits(words: &[u64], pos: usize, width: u32) -> u64 {
    if width == 0 {
        return 0;
    }
    let wi = pos / 64;
    let off = (pos % 64) as u32;
    let mut v = words[wi] >> off;
    if off + width > 64 {
        v |= words[wi + 1] << (64 - off);
    }
    if width == 64 {
        v
    } else {
        v & ((1u64 << width) - 1)
    }
}

/// Position of the `k`-th set bit (0-based) inside `w`. `k < w.count_ones()`.
#[inline]
pub(crate) fn select_in_word(mut w: u64, mut k: u32) -> u32 {
    debug_assert!(k < w.count_ones());
    let mut base = 0;
    loop {
        let c = (w & 0xFF).count_ones();
        if k < c {
            break;
        }
        k -= c;
        w >>= 8;
        base += 8;
    }
    for _ in 0..k {
        w &= w - 1;
    }
    base + w.trailing_zeros()
}
