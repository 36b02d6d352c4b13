//! Internal bitset sieve over a residue window `[0, len)`.
//!
//! Marking is chunked on word boundaries so it can run data-parallel;
//! the resulting bits are identical to a single-threaded pass.

use rayon::prelude::*;

use crate::types::Congruence;

const CHUNK_WORDS: usize = 1 << 14; // 1 MiB of residues per task

pub(crate) struct Bitset {
    words: Vec<u64>,
    len: usize,
}

impl Bitset {
    pub fn new(len: usize) -> Self {
        Bitset {
            words: vec![0u64; len.div_ceil(64)],
            len,
        }
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    /// Marks every residue in `[0, len)` satisfying one of the congruences.
    pub fn mark(&mut self, congruences: &[Congruence]) {
        let len = self.len;
        self.words
            .par_chunks_mut(CHUNK_WORDS)
            .enumerate()
            .for_each(|(chunk_index, words)| {
                let lo = chunk_index * CHUNK_WORDS * 64;
                let hi = (lo + words.len() * 64).min(len);
                for c in congruences {
                    let m = c.modulus() as usize;
                    let x = c.residue() as usize;
                    let mut z = if x >= lo {
                        x
                    } else {
                        x + (lo - x).div_ceil(m) * m
                    };
                    while z < hi {
                        words[(z - lo) / 64] |= 1 << (z % 64);
                        z += m;
                    }
                }
            });
    }

    /// Number of unset bits, and the index of the lowest one.
    pub fn count_and_first_zero(&self) -> (u64, Option<usize>) {
        let len = self.len;
        let (count, first) = self
            .words
            .par_chunks(CHUNK_WORDS)
            .enumerate()
            .map(|(chunk_index, words)| {
                let lo = chunk_index * CHUNK_WORDS * 64;
                let mut count = 0u64;
                let mut first: Option<usize> = None;
                for (wi, &w) in words.iter().enumerate() {
                    let base = lo + wi * 64;
                    let bits = if base + 64 <= len { 64 } else { len.saturating_sub(base) };
                    if bits == 0 {
                        break;
                    }
                    let mask = if bits == 64 { !0u64 } else { (1u64 << bits) - 1 };
                    let zeros = !w & mask;
                    count += zeros.count_ones() as u64;
                    if first.is_none() && zeros != 0 {
                        first = Some(base + zeros.trailing_zeros() as usize);
                    }
                }
                (count, first)
            })
            .reduce(
                || (0u64, None),
                |(ca, fa), (cb, fb)| (ca + cb, fa.or(fb).map(|f| fa.unwrap_or(f).min(fb.unwrap_or(f)))),
            );
        (count, first)
    }

    /// Indices of all unset bits, ascending.
    pub fn zeros(&self) -> Vec<usize> {
        (0..self.len).filter(|&i| !self.get(i)).collect()
    }
}
