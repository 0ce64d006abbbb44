use super::bitvector::{read_bits, BitWriter};
use super::elias_fano::EliasFano;
use crate::codec::{ByteReader, ByteWriter};
use crate::error::DecodeError;

/// Simple dense coding: value `v` is stored as the binary form of `v + 1`
/// with its leading one dropped, so it takes `floor(log2(v + 1))` bits and
/// zero costs nothing. Code boundaries are kept as an Elias-Fano sequence of
/// start offsets, giving constant-time access to any element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseCodeSequence {
    code_bits: usize,
    codes: Vec<u64>,
    boundaries: EliasFano,
}

impl DenseCodeSequence {
    pub fn new(values: &[u64]) -> Self {
        let mut offsets = Vec::with_capacity(values.len() + 1);
        let mut bw = BitWriter::with_capacity(values.len() * 4);
        offsets.push(0);
        for &v in values {
            let x = v as u128 + 1;
            let len = 127 - x.leading_zeros();
            bw.push_bits((x ^ (1u128 << len)) as u64, len);
            offsets.push(bw.len() as u64);
        }
        let (code_bits, codes) = bw.finish();
        let boundaries = EliasFano::from_sorted(&offsets).expect("offsets are non-decreasing");
        Self {
            code_bits,
            codes,
            boundaries,
        }
    }

    pub fn len(&self) -> usize {
        self.boundaries.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn access(&self, i: usize) -> u64 {
        assert!(i < self.len(), "index {i} out of range {}", self.len());
        let (start, end) = self.boundaries.pair(i);
        let len = (end - start) as u32;
        let bits = read_bits(&self.codes, start as usize, len);
        ((1u128 << len) | bits as u128).wrapping_sub(1) as u64
    }

    pub fn code_bits(&self) -> usize {
        self.code_bits
    }

    pub fn size_in_bits(&self) -> u64 {
        64 + 64 * self.codes.len() as u64 + self.boundaries.size_in_bits()
    }

    pub(crate) fn write_to(&self, w: &mut ByteWriter) {
        w.u64(self.code_bits as u64);
        w.words(&self.codes);
        self.boundaries.write_to(w);
    }

    pub(crate) fn read_from(r: &mut ByteReader<'_>) -> Result<Self, DecodeError> {
        let code_bits = r.len(0)?;
        let codes = r.words(code_bits.div_ceil(64))?;
        let boundaries = EliasFano::read_from(r)?;
        if boundaries.is_empty() {
            return Err(DecodeError::Corrupt("dense code without boundaries".into()));
        }
        if boundaries.access(boundaries.len() - 1) != code_bits as u64 {
            return Err(DecodeError::Corrupt(
                "dense code boundaries disagree with stream".into(),
            ));
        }
        let widest = (0..boundaries.len() - 1).map(|i| boundaries.diff(i)).max().unwrap_or(0);
        if widest > 64 {
            return Err(DecodeError::Corrupt(format!("dense code of {widest} bits")));
        }
        Ok(Self {
            code_bits,
            codes,
            boundaries,
        })
    }
}
