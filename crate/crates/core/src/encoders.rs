//! Compressed, randomly accessible pilot tables.
//!
//! Four single-part schemes are available: compact (fixed width), dictionary
//! (distinct values plus narrow references), Elias-Fano over prefix sums and
//! simple dense coding. Front-back encodings split the table at the bucket
//! boundary `p2` and encode each side with its own scheme.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::bits::{width_for, CompactVector, DenseCodeSequence, EliasFano};
use crate::codec::{ByteReader, ByteWriter};
use crate::error::DecodeError;

/// The encoder menu.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EncoderKind {
    Compact,
    CompactCompact,
    Dictionary,
    DictionaryDictionary,
    DictionaryEliasFano,
    EliasFano,
    Sdc,
}

/// Scheme used for one contiguous part of the pilots table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartScheme {
    Compact,
    Dictionary,
    EliasFano,
    Sdc,
}

impl EncoderKind {
    pub const ALL: [EncoderKind; 7] = [
        Self::Compact,
        Self::CompactCompact,
        Self::Dictionary,
        Self::DictionaryDictionary,
        Self::DictionaryEliasFano,
        Self::EliasFano,
        Self::Sdc,
    ];

    pub fn tag(self) -> u8 {
        match self {
            Self::Compact => 0,
            Self::CompactCompact => 1,
            Self::Dictionary => 2,
            Self::DictionaryDictionary => 3,
            Self::DictionaryEliasFano => 4,
            Self::EliasFano => 5,
            Self::Sdc => 6,
        }
    }

    pub fn from_tag(tag: u8) -> Option<Self> {
        Self::ALL.get(tag as usize).copied()
    }

    /// Short flag name: c, cc, d, dd, def, ef, sdc.
    pub fn flag(self) -> &'static str {
        match self {
            Self::Compact => "c",
            Self::CompactCompact => "cc",
            Self::Dictionary => "d",
            Self::DictionaryDictionary => "dd",
            Self::DictionaryEliasFano => "def",
            Self::EliasFano => "ef",
            Self::Sdc => "sdc",
        }
    }

    /// `(front, back)` schemes for front-back encodings.
    pub fn front_back(self) -> Option<(PartScheme, PartScheme)> {
        match self {
            Self::CompactCompact => Some((PartScheme::Compact, PartScheme::Compact)),
            Self::DictionaryDictionary => Some((PartScheme::Dictionary, PartScheme::Dictionary)),
            Self::DictionaryEliasFano => Some((PartScheme::Dictionary, PartScheme::EliasFano)),
            _ => None,
        }
    }

    fn single(self) -> Option<PartScheme> {
        match self {
            Self::Compact => Some(PartScheme::Compact),
            Self::Dictionary => Some(PartScheme::Dictionary),
            Self::EliasFano => Some(PartScheme::EliasFano),
            Self::Sdc => Some(PartScheme::Sdc),
            _ => None,
        }
    }
}

impl fmt::Display for EncoderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Compact => "C",
            Self::CompactCompact => "C-C",
            Self::Dictionary => "D",
            Self::DictionaryDictionary => "D-D",
            Self::DictionaryEliasFano => "D-EF",
            Self::EliasFano => "EF",
            Self::Sdc => "SDC",
        })
    }
}

impl FromStr for EncoderKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm: String = s.chars().filter(|c| *c != '-').collect::<String>().to_ascii_lowercase();
        Self::ALL
            .into_iter()
            .find(|k| k.flag() == norm)
            .ok_or_else(|| format!("unknown encoder {s:?}; expected one of c, cc, d, dd, def, ef, sdc"))
    }
}

/// Distinct values plus per-entry references into them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DictionaryEncoded {
    dictionary: CompactVector,
    references: CompactVector,
}

impl DictionaryEncoded {
    pub fn new(values: &[u64]) -> Self {
        let mut distinct = values.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        let index: HashMap<u64, u64> = distinct.iter().enumerate().map(|(i, &v)| (v, i as u64)).collect();
        let refs: Vec<u64> = values.iter().map(|v| index[v]).collect();
        let ref_width = width_for(distinct.len().saturating_sub(1) as u64);
        Self {
            dictionary: CompactVector::from_values(&distinct),
            references: CompactVector::new(&refs, ref_width).expect("references below dictionary size"),
        }
    }

    #[inline]
    pub fn access(&self, i: usize) -> u64 {
        self.dictionary.access(self.references.access(i) as usize)
    }

    pub fn dictionary(&self) -> &CompactVector {
        &self.dictionary
    }

    pub fn references(&self) -> &CompactVector {
        &self.references
    }

    fn size_in_bits(&self) -> u64 {
        self.dictionary.size_in_bits() + self.references.size_in_bits()
    }

    fn write_to(&self, w: &mut ByteWriter) {
        self.dictionary.write_to(w);
        self.references.write_to(w);
    }

    fn read_from(r: &mut ByteReader<'_>) -> Result<Self, DecodeError> {
        let dictionary = CompactVector::read_from(r)?;
        let references = CompactVector::read_from(r)?;
        if references.iter().any(|x| x as usize >= dictionary.len()) {
            return Err(DecodeError::Corrupt("dictionary reference out of range".into()));
        }
        Ok(Self { dictionary, references })
    }
}

/// Non-monotone values stored as the Elias-Fano coded prefix sums; entry `i`
/// is the difference of two adjacent sums.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixSumEliasFano {
    sums: EliasFano,
}

impl PrefixSumEliasFano {
    pub fn new(values: &[u64]) -> Self {
        let mut sums = Vec::with_capacity(values.len() + 1);
        let mut acc = 0u64;
        sums.push(0);
        for &v in values {
            acc = acc.checked_add(v).expect("pilot prefix sum overflows u64");
            sums.push(acc);
        }
        Self {
            sums: EliasFano::from_sorted(&sums).expect("prefix sums are monotone"),
        }
    }

    #[inline]
    pub fn access(&self, i: usize) -> u64 {
        self.sums.diff(i)
    }

    fn read_from(r: &mut ByteReader<'_>) -> Result<Self, DecodeError> {
        let sums = EliasFano::read_from(r)?;
        if sums.is_empty() || sums.access(0) != 0 {
            return Err(DecodeError::Corrupt("prefix sums must start at zero".into()));
        }
        Ok(Self { sums })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Part {
    Compact(CompactVector),
    Dictionary(DictionaryEncoded),
    EliasFano(PrefixSumEliasFano),
    Sdc(DenseCodeSequence),
}

impl Part {
    fn encode(values: &[u64], scheme: PartScheme) -> Self {
        match scheme {
            PartScheme::Compact => Part::Compact(CompactVector::from_values(values)),
            PartScheme::Dictionary => Part::Dictionary(DictionaryEncoded::new(values)),
            PartScheme::EliasFano => Part::EliasFano(PrefixSumEliasFano::new(values)),
            PartScheme::Sdc => Part::Sdc(DenseCodeSequence::new(values)),
        }
    }

    #[inline]
    fn access(&self, i: usize) -> u64 {
        match self {
            Part::Compact(cv) => cv.access(i),
            Part::Dictionary(d) => d.access(i),
            Part::EliasFano(ef) => ef.access(i),
            Part::Sdc(dc) => dc.access(i),
        }
    }

    fn len(&self) -> usize {
        match self {
            Part::Compact(cv) => cv.len(),
            Part::Dictionary(d) => d.references.len(),
            Part::EliasFano(ef) => ef.sums.len() - 1,
            Part::Sdc(dc) => dc.len(),
        }
    }

    fn size_in_bits(&self) -> u64 {
        match self {
            Part::Compact(cv) => cv.size_in_bits(),
            Part::Dictionary(d) => d.size_in_bits(),
            Part::EliasFano(ef) => ef.sums.size_in_bits(),
            Part::Sdc(dc) => dc.size_in_bits(),
        }
    }

    fn write_to(&self, w: &mut ByteWriter) {
        match self {
            Part::Compact(cv) => cv.write_to(w),
            Part::Dictionary(d) => d.write_to(w),
            Part::EliasFano(ef) => ef.sums.write_to(w),
            Part::Sdc(dc) => dc.write_to(w),
        }
    }

    fn read_from(r: &mut ByteReader<'_>, scheme: PartScheme) -> Result<Self, DecodeError> {
        Ok(match scheme {
            PartScheme::Compact => Part::Compact(CompactVector::read_from(r)?),
            PartScheme::Dictionary => Part::Dictionary(DictionaryEncoded::read_from(r)?),
            PartScheme::EliasFano => Part::EliasFano(PrefixSumEliasFano::read_from(r)?),
            PartScheme::Sdc => Part::Sdc(DenseCodeSequence::read_from(r)?),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Repr {
    Single(Part),
    FrontBack { split: usize, front: Part, back: Part },
}

/// A lossless, randomly accessible pilots table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodedPilots {
    kind: EncoderKind,
    len: usize,
    repr: Repr,
}

impl EncodedPilots {
    /// Encodes `pilots`; `split` is the front-back boundary and is ignored
    /// by single-part schemes.
    pub fn encode(pilots: &[u64], kind: EncoderKind, split: usize) -> Self {
        let repr = match (kind.single(), kind.front_back()) {
            (Some(scheme), _) => Repr::Single(Part::encode(pilots, scheme)),
            (None, Some((f, b))) => {
                assert!(split <= pilots.len(), "split {split} beyond table of {}", pilots.len());
                Repr::FrontBack {
                    split,
                    front: Part::encode(&pilots[..split], f),
                    back: Part::encode(&pilots[split..], b),
                }
            }
            (None, None) => unreachable!(),
        };
        Self {
            kind,
            len: pilots.len(),
            repr,
        }
    }

    pub fn kind(&self) -> EncoderKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn access(&self, i: usize) -> u64 {
        match &self.repr {
            Repr::Single(p) => p.access(i),
            Repr::FrontBack { split, front, back } => {
                if i < *split {
                    front.access(i)
                } else {
                    back.access(i - split)
                }
            }
        }
    }

    pub fn to_vec(&self) -> Vec<u64> {
        (0..self.len).map(|i| self.access(i)).collect()
    }

    /// Serialized payload size in bits, scheme tag included.
    pub fn measure_bits(&self) -> u64 {
        8 + match &self.repr {
            Repr::Single(p) => p.size_in_bits(),
            Repr::FrontBack { front, back, .. } => 64 + front.size_in_bits() + back.size_in_bits(),
        }
    }

    pub(crate) fn write_to(&self, w: &mut ByteWriter) {
        w.u8(self.kind.tag());
        match &self.repr {
            Repr::Single(p) => p.write_to(w),
            Repr::FrontBack { split, front, back } => {
                w.u64(*split as u64);
                front.write_to(w);
                back.write_to(w);
            }
        }
    }

    pub(crate) fn read_from(r: &mut ByteReader<'_>) -> Result<Self, DecodeError> {
        let tag = r.u8()?;
        let kind =
            EncoderKind::from_tag(tag).ok_or_else(|| DecodeError::Corrupt(format!("unknown encoder tag {tag}")))?;
        let repr = match (kind.single(), kind.front_back()) {
            (Some(scheme), _) => Repr::Single(Part::read_from(r, scheme)?),
            (None, Some((f, b))) => {
                let split = r.u64()? as usize;
                let front = Part::read_from(r, f)?;
                let back = Part::read_from(r, b)?;
                if front.len() != split {
                    return Err(DecodeError::Corrupt("front part length differs from split".into()));
                }
                Repr::FrontBack { split, front, back }
            }
            (None, None) => unreachable!(),
        };
        let len = match &repr {
            Repr::Single(p) => p.len(),
            Repr::FrontBack { front, back, .. } => front.len() + back.len(),
        };
        Ok(Self { kind, len, repr })
    }
}
