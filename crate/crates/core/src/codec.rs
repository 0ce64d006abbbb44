//! Little-endian byte codec shared by every serialized container.

use crate::error::DecodeError;

#[derive(Default)]
pub(crate) struct ByteWriter {
    buf: Vec<u8>,
}

impl ByteWriter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn u8(&mut self, v: u8) {
        self.buf.push(v);
    }

    pub fn u64(&mut self, v: u64) {
        self.buf.extend_from_slice(&v.to_le_bytes());
    }

    pub fn bytes(&mut self, b: &[u8]) {
        self.buf.extend_from_slice(b);
    }

    pub fn words(&mut self, ws: &[u64]) {
        self.buf.reserve(ws.len() * 8);
        for &w in ws {
            self.u64(w);
        }
    }

    pub fn into_inner(self) -> Vec<u8> {
        self.buf
    }
}

pub(crate) struct ByteReader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> ByteReader<'a> {
    pub fn new(buf: &'a [u8]) -> Self {
        Self { buf, pos: 0 }
    }

    pub fn take(&mut self, len: usize) -> Result<&'a [u8], DecodeError> {
        let remaining = self.buf.len() - self.pos;
        if remaining < len {
            return Err(DecodeError::Truncated {
                offset: self.pos,
                needed: len - remaining,
            });
        }
        let out = &self.buf[self.pos..self.pos + len];
        self.pos += len;
        Ok(out)
    }

    pub fn u8(&mut self) -> Result<u8, DecodeError> {
        Ok(self.take(1)?[0])
    }

    pub fn u64(&mut self) -> Result<u64, DecodeError> {
        let b = self.take(8)?;
        Ok(u64::from_le_bytes(b.try_into().unwrap()))
    }

    /// Reads a length field that must fit in memory; `unit` is the byte size
    /// of one element so absurd lengths fail as truncation, not allocation.
    pub fn len(&mut self, unit: usize) -> Result<usize, DecodeError> {
        let v = self.u64()?;
        let remaining = (self.buf.len() - self.pos) as u64;
        if unit > 0 && v.saturating_mul(unit as u64) > remaining {
            return Err(DecodeError::Truncated {
                offset: self.pos,
                needed: (v.saturating_mul(unit as u64) - remaining).min(usize::MAX as u64) as usize,
            });
        }
        Ok(v as usize)
    }

    pub fn words(&mut self, count: usize) -> Result<Vec<u64>, DecodeError> {
        let b = self.take(
            count
                .checked_mul(8)
                .ok_or_else(|| DecodeError::Corrupt(format!("word count {count} overflows")))?,
        )?;
        Ok(b.chunks_exact(8)
            .map(|c| u64::from_le_bytes(c.try_into().unwrap()))
            .collect())
    }

    pub fn is_empty(&self) -> bool {
        self.pos == self.buf.len()
    }

    pub fn position(&self) -> usize {
        self.pos
    }
}
