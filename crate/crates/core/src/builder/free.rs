use crate::bits::{BitVector, EliasFano};
use crate::codec::{ByteReader, ByteWriter};
use crate::error::DecodeError;

/// Re-ranking table for positions `p >= n`: entry `p - n` is the hole below
/// `n` that the key landing on `p` is sent to. Unassigned entries repeat the
/// previous assigned value so the sequence stays non-decreasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeSlots {
    entries: EliasFano,
}

impl FreeSlots {
    pub fn empty() -> Self {
        Self {
            entries: EliasFano::from_sorted(&[]).unwrap(),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    #[inline]
    pub fn get(&self, i: usize) -> u64 {
        self.entries.access(i)
    }

    /// Final index of a key placed at table position `p`.
    #[inline]
    pub fn rerank(&self, p: u64, n: u64) -> u64 {
        if p < n {
            p
        } else {
            self.entries.access((p - n) as usize)
        }
    }

    pub fn size_in_bits(&self) -> u64 {
        self.entries.size_in_bits()
    }

    pub(crate) fn write_to(&self, w: &mut ByteWriter) {
        self.entries.write_to(w);
    }

    pub(crate) fn read_from(r: &mut ByteReader<'_>, n: u64, n_prime: u64) -> Result<Self, DecodeError> {
        let entries = EliasFano::read_from(r)?;
        if entries.len() as u64 != n_prime - n {
            return Err(DecodeError::Corrupt(format!(
                "free array holds {} entries, expected {}",
                entries.len(),
                n_prime - n
            )));
        }
        if !entries.is_empty() && entries.universe() > n {
            return Err(DecodeError::Corrupt("free array value outside [0, n)".into()));
        }
        Ok(Self { entries })
    }
}

/// Raw free-array entries for a final `taken` bitmap over `n_prime` slots
/// holding `n` keys.
pub fn free_entries(taken: &BitVector, n: u64, n_prime: u64) -> Vec<u64> {
    assert_eq!(taken.len() as u64, n_prime);
    assert_eq!(taken.count_ones() as u64, n, "taken bitmap must hold exactly n keys");
    if n_prime == n {
        return Vec::new();
    }
    let mut holes = taken.zeros().take_while(|&p| (p as u64) < n);
    let mut entries = vec![0u64; (n_prime - n) as usize];
    let mut last = 0u64;
    let mut next_assigned = taken.ones().skip_while(|&p| (p as u64) < n).peekable();
    for (i, entry) in entries.iter_mut().enumerate() {
        let p = n as usize + i;
        if next_assigned.peek() == Some(&p) {
            next_assigned.next();
            last = holes.next().expect("one hole below n per key above n") as u64;
        }
        *entry = last;
    }
    debug_assert!(holes.next().is_none());
    entries
}

pub fn fill_free(taken: &BitVector, n: u64, n_prime: u64) -> FreeSlots {
    let entries = free_entries(taken, n, n_prime);
    if entries.is_empty() {
        return FreeSlots::empty();
    }
    FreeSlots {
        entries: EliasFano::new(&entries, n).expect("assigned holes are increasing and below n"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    fn bitmap(len: usize, holes: &[usize]) -> BitVector {
        let mut bv = BitVector::new(len);
        for i in 0..len {
            bv.set(i, !holes.contains(&i));
        }
        bv
    }

    #[test]
    fn worked_example() {
        let taken = bitmap(14, &[0, 2, 8, 9, 12]);
        assert_eq!(free_entries(&taken, 9, 14), vec![0, 0, 2, 2, 8]);
        let free = fill_free(&taken, 9, 14);
        assert_eq!(free.rerank(10, 9), 0);
        assert_eq!(free.rerank(11, 9), 2);
        assert_eq!(free.rerank(13, 9), 8);
        assert_eq!(free.rerank(4, 9), 4);
    }

    #[test]
    fn no_slack_means_empty() {
        let taken = bitmap(7, &[]);
        assert!(fill_free(&taken, 7, 7).is_empty());
    }

    #[test]
    fn no_holes_below_n() {
        let taken = bitmap(6, &[4, 5]);
        assert_eq!(free_entries(&taken, 4, 6), vec![0, 0]);
    }

    #[test]
    #[should_panic]
    fn popcount_mismatch_panics() {
        fill_free(&bitmap(6, &[4]), 4, 6);
    }

    #[test]
    fn random_bitmaps_rerank_to_bijection() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let (n, n_prime) = (100usize, 120usize);
        for _ in 0..200 {
            let mut slots: Vec<usize> = (0..n_prime).collect();
            slots.shuffle(&mut rng);
            let occupied = &slots[..n];
            let mut taken = BitVector::new(n_prime);
            for &p in occupied {
                taken.set(p, true);
            }
            let free = fill_free(&taken, n as u64, n_prime as u64);
            let mut image: Vec<u64> = occupied.iter().map(|&p| free.rerank(p as u64, n as u64)).collect();
            image.sort_unstable();
            assert_eq!(image, (0..n as u64).collect::<Vec<_>>());
        }
    }
}
