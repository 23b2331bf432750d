//! Plain bit vectors with constant-time rank support.
//!
//! Positions are 1-based to match the suffix array indexing used throughout
//! the crate: `rank1(i)` counts the ones in positions `1..=i`, and
//! `rank1(0) == 0`.

/// Number of 64-bit words per rank superblock.
const WORDS_PER_SUPERBLOCK: usize = 8;

/// Mutable bit buffer used while an algorithm is still setting and clearing
/// bits. Freeze it into a [`RankBitVector`] once the contents are final.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitBuffer {
    len: usize,
    words: Vec<u64>,
}

impl BitBuffer {
    pub fn new(len: usize) -> Self {
        BitBuffer {
            len,
            words: vec![0u64; len.div_ceil(64)],
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Set the bit at 1-based position `i`.
    pub fn set(&mut self, i: usize) {
        debug_assert!(i >= 1 && i <= self.len);
        self.words[(i - 1) >> 6] |= 1u64 << ((i - 1) & 63);
    }

    /// Clear the bit at 1-based position `i`.
    pub fn clear(&mut self, i: usize) {
        debug_assert!(i >= 1 && i <= self.len);
        self.words[(i - 1) >> 6] &= !(1u64 << ((i - 1) & 63));
    }

    /// Read the bit at 1-based position `i`.
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i >= 1 && i <= self.len);
        (self.words[(i - 1) >> 6] >> ((i - 1) & 63)) & 1 == 1
    }

    /// Build the rank structures and return an immutable vector.
    pub fn freeze(self) -> RankBitVector {
        RankBitVector::from_words(self.len, self.words)
    }
}

/// Immutable bit vector answering `rank1` in constant time via two-level
/// counts: absolute counts per superblock and 16-bit relative counts per
/// 64-bit word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankBitVector {
    len: usize,
    words: Vec<u64>,
    superblocks: Vec<u64>,
    blocks: Vec<u16>,
    ones: usize,
}

impl RankBitVector {
    pub fn from_words(len: usize, words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), len.div_ceil(64));
        let n_words = words.len();
        let mut superblocks = Vec::with_capacity(n_words / WORDS_PER_SUPERBLOCK + 1);
        let mut blocks = Vec::with_capacity(n_words);
        let mut total = 0u64;
        let mut within = 0u16;
        for (w, &word) in words.iter().enumerate() {
            if w % WORDS_PER_SUPERBLOCK == 0 {
                superblocks.push(total);
                within = 0;
            }
            blocks.push(within);
            let pop = word.count_ones();
            within += pop as u16;
            total += pop as u64;
        }
        RankBitVector {
            len,
            words,
            superblocks,
            blocks,
            ones: total as usize,
        }
    }

    /// Build from an iterator of 1-based positions that hold a one.
    pub fn from_positions(len: usize, positions: impl IntoIterator<Item = usize>) -> Self {
        let mut buf = BitBuffer::new(len);
        for p in positions {
            buf.set(p);
        }
        buf.freeze()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Total number of ones.
    pub fn count_ones(&self) -> usize {
        self.ones
    }

    /// Bit at 1-based position `i`.
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i >= 1 && i <= self.len);
        (self.words[(i - 1) >> 6] >> ((i - 1) & 63)) & 1 == 1
    }

    /// Number of ones in positions `1..=i`; `rank1(0) == 0`.
    pub fn rank1(&self, i: usize) -> usize {
        debug_assert!(i <= self.len);
        if i == 0 {
            return 0;
        }
        let w = (i - 1) >> 6;
        let offset = (i - 1) & 63;
        let mask = if offset == 63 {
            u64::MAX
        } else {
            (1u64 << (offset + 1)) - 1
        };
        self.superblocks[w / WORDS_PER_SUPERBLOCK] as usize
            + self.blocks[w] as usize
            + (self.words[w] & mask).count_ones() as usize
    }

    /// 1-based position of the `k`-th one (`k >= 1`), or `None` if there are
    /// fewer than `k` ones. Binary search over rank.
    pub fn select1(&self, k: usize) -> Option<usize> {
        if k == 0 || k > self.ones {
            return None;
        }
        let mut lo = 1;
        let mut hi = self.len;
        while lo < hi {
            let mid = (lo + hi) / 2;
            if self.rank1(mid) >= k {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        Some(lo)
    }

    /// 1-based position of the `k`-th zero (`k >= 1`), or `None` if there are
    /// fewer than `k` zeros.
    pub fn select0(&self, k: usize) -> Option<usize> {
        if k == 0 || k > self.len - self.ones {
            return None;
        }
        let mut lo = 1;
        let mut hi = self.len;
        while lo < hi {
            let mid = (lo + hi) / 2;
            if mid - self.rank1(mid) >= k {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        Some(lo)
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }
}
