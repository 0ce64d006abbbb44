use super::bitvector::{read_bits, BitWriter};
use crate::codec::{ByteReader, ByteWriter};
use crate::error::{ContainerError, DecodeError};

/// Fixed-width packed integer vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompactVector {
    len: usize,
    width: u32,
    words: Vec<u64>,
}

/// Bits needed to store `max`, never less than one.
pub fn width_for(max: u64) -> u32 {
    (64 - max.leading_zeros()).max(1)
}

impl CompactVector {
    pub fn new(values: &[u64], width: u32) -> Result<Self, ContainerError> {
        if !(1..=64).contains(&width) {
            return Err(ContainerError::BadWidth(width));
        }
        let mut bw = BitWriter::with_capacity(values.len() * width as usize);
        for (index, &value) in values.iter().enumerate() {
            if width < 64 && value >> width != 0 {
                return Err(ContainerError::ValueTooWide { index, value, width });
            }
            bw.push_bits(value, width);
        }
        let (_, words) = bw.finish();
        Ok(Self {
            len: values.len(),
            width,
            words,
        })
    }

    /// Builds with the narrowest width holding every value.
    pub fn from_values(values: &[u64]) -> Self {
        let max = values.iter().copied().max().unwrap_or(0);
        Self::new(values, width_for(max)).expect("width derived from max")
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    #[inline]
    pub fn access(&self, i: usize) -> u64 {
        assert!(i < self.len, "index {i} out of range {}", self.len);
        read_bits(&self.words, i * self.width as usize, self.width)
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.len).map(|i| self.access(i))
    }

    pub fn storage_bits(&self) -> u64 {
        64 * self.words.len() as u64
    }

    /// Serialized size: length and width headers plus the packed words.
    pub fn size_in_bits(&self) -> u64 {
        128 + self.storage_bits()
    }

    pub(crate) fn write_to(&self, w: &mut ByteWriter) {
        w.u64(self.len as u64);
        w.u64(self.width as u64);
        w.words(&self.words);
    }

    pub(crate) fn read_from(r: &mut ByteReader<'_>) -> Result<Self, DecodeError> {
        let len = r.len(0)?;
        let width = r.u64()?;
        if !(1..=64).contains(&width) {
            return Err(DecodeError::Corrupt(format!("compact vector width {width}")));
        }
        let width = width as u32;
        let bits = len
            .checked_mul(width as usize)
            .ok_or_else(|| DecodeError::Corrupt("compact vector size overflows".into()))?;
        let words = r.words(bits.div_ceil(64))?;
        Ok(Self { len, width, words })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn round_trip_width_three() {
        let cv = CompactVector::new(&[5, 0, 7], 3).unwrap();
        assert_eq!(cv.access(2), 7);
        assert_eq!(cv.access(0), 5);
    }

    #[test]
    fn round_trip_width_one() {
        let cv = CompactVector::new(&[1, 0, 1, 1], 1).unwrap();
        assert_eq!(cv.access(1), 0);
        assert_eq!(cv.access(3), 1);
    }

    #[test]
    fn full_width() {
        let cv = CompactVector::new(&[u64::MAX], 64).unwrap();
        assert_eq!(cv.access(0), u64::MAX);
    }

    #[test]
    fn rejects_wide_value() {
        assert_eq!(
            CompactVector::new(&[1, 8], 3),
            Err(ContainerError::ValueTooWide {
                index: 1,
                value: 8,
                width: 3
            })
        );
        assert_eq!(CompactVector::new(&[], 0), Err(ContainerError::BadWidth(0)));
    }

    #[test]
    fn zero_width_is_bumped() {
        assert_eq!(width_for(0), 1);
        assert_eq!(width_for(1), 1);
        assert_eq!(width_for(2), 2);
        assert_eq!(width_for(u64::MAX), 64);
        let cv = CompactVector::from_values(&[0, 0, 0]);
        assert_eq!(cv.width(), 1);
    }

    #[test]
    fn storage_is_word_rounded() {
        let cv = CompactVector::new(&[1; 100], 7).unwrap();
        assert_eq!(cv.storage_bits(), (700u64).div_ceil(64) * 64);
        assert!(CompactVector::from_values(&[]).is_empty());
    }

    proptest! {
        #[test]
        fn round_trip(values in prop::collection::vec(any::<u64>(), 0..2000), shift in 0u32..64) {
            let values: Vec<u64> = values.into_iter().map(|v| v >> shift).collect();
            let cv = CompactVector::from_values(&values);
            prop_assert_eq!(cv.len(), values.len());
            for (i, &v) in values.iter().enumerate() {
                prop_assert_eq!(cv.access(i), v);
                prop_assert!(cv.width() == 64 || cv.access(i) >> cv.width() == 0);
            }
        }
    }
}
