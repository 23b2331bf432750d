//! FM-index: wavelet tree over the BWT, C-array, backward search,
//! `get_intervals`, LF, Psi and a sampled suffix array for `locate`.
//!
//! SA indices are 1-based. The empty-pattern interval is `[1..n]`; an
//! interval with `lb > rb` means the pattern does not occur.

use crate::bitvec::{BitBuffer, RankBitVector};
use crate::sequence_store::Text;
use crate::suffix::{BwtString, SuffixArray};
use crate::wavelet::WaveletTree;

/// Inclusive 1-based SA interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lb: usize,
    pub rb: usize,
}

impl Interval {
    pub fn new(lb: usize, rb: usize) -> Interval {
        Interval { lb, rb }
    }

    pub fn is_empty(&self) -> bool {
        self.lb > self.rb
    }

    pub fn len(&self) -> usize {
        if self.is_empty() {
            0
        } else {
            self.rb - self.lb + 1
        }
    }
}

/// Suffix array values kept at sampled SA indices: every index whose suffix
/// position is `1 (mod rate)`, plus indices `1..=d` so the separator
/// suffixes are always known exactly.
#[derive(Debug, Clone)]
pub struct SaSamples {
    rate: u32,
    marked: RankBitVector,
    values: Vec<usize>,
}

impl SaSamples {
    fn new(sa: &SuffixArray, d: usize, rate: u32) -> SaSamples {
        let n = sa.n();
        let rate = rate.max(1);
        let mut buf = BitBuffer::new(n);
        for i in 1..=n {
            if i <= d || (sa.pos_at_rank(i) - 1).is_multiple_of(rate as usize) {
                buf.set(i);
            }
        }
        let marked = buf.freeze();
        let mut values = Vec::with_capacity(marked.count_ones());
        for i in 1..=n {
            if marked.get(i) {
                values.push(sa.pos_at_rank(i));
            }
        }
        SaSamples {
            rate,
            marked,
            values,
        }
    }

    pub fn rate(&self) -> u32 {
        self.rate
    }

    pub fn is_sampled(&self, i: usize) -> bool {
        self.marked.get(i)
    }

    pub fn value(&self, i: usize) -> usize {
        self.values[self.marked.rank1(i) - 1]
    }

    pub(crate) fn parts(&self) -> (u32, &RankBitVector, &[usize]) {
        (self.rate, &self.marked, &self.values)
    }

    pub(crate) fn from_parts(rate: u32, marked: RankBitVector, values: Vec<usize>) -> SaSamples {
        SaSamples {
            rate,
            marked,
            values,
        }
    }
}

#[derive(Debug, Clone)]
pub struct FmIndex {
    wavelet: WaveletTree,
    c_array: Vec<usize>,
    samples: SaSamples,
    n: usize,
    sigma: usize,
    d: usize,
}

impl FmIndex {
    pub fn new(text: &Text, sa: &SuffixArray, bwt: &BwtString, sample_rate: u32) -> FmIndex {
        let n = text.n();
        let sigma = text.sigma();
        let symbols: Vec<u32> = bwt.codes().iter().map(|&c| c as u32).collect();
        let wavelet = WaveletTree::new(&symbols, sigma as u32);
        let mut c_array = vec![0usize; sigma + 1];
        for &c in bwt.codes() {
            c_array[c as usize + 1] += 1;
        }
        for c in 0..sigma {
            c_array[c + 1] += c_array[c];
        }
        FmIndex {
            wavelet,
            c_array,
            samples: SaSamples::new(sa, text.d(), sample_rate),
            n,
            sigma,
            d: text.d(),
        }
    }

    pub(crate) fn from_parts(
        wavelet: WaveletTree,
        c_array: Vec<usize>,
        samples: SaSamples,
        sigma: usize,
        d: usize,
    ) -> FmIndex {
        FmIndex {
            n: wavelet.len(),
            wavelet,
            c_array,
            samples,
            sigma,
            d,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sigma(&self) -> usize {
        self.sigma
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// `c_array[c]` = number of BWT characters strictly smaller than `c`;
    /// the slice has a virtual end entry `c_array[sigma] = n`.
    pub fn c_array(&self) -> &[usize] {
        &self.c_array
    }

    pub(crate) fn wavelet(&self) -> &WaveletTree {
        &self.wavelet
    }

    pub(crate) fn samples(&self) -> &SaSamples {
        &self.samples
    }

    /// The interval of the empty string.
    pub fn full_interval(&self) -> Interval {
        Interval::new(1, self.n)
    }

    /// BWT character (dense code) at SA index `i`, reconstructed from the
    /// wavelet tree.
    pub fn bwt_code(&self, i: usize) -> u8 {
        self.wavelet.access(i) as u8
    }

    /// Materialise the whole BWT; used by the construction algorithms that
    /// scan it left to right.
    pub fn decode_bwt(&self) -> Vec<u8> {
        (1..=self.n).map(|i| self.bwt_code(i)).collect()
    }

    /// One backward search step: the `c omega`-interval from the
    /// `omega`-interval. Empty output means `c omega` does not occur.
    pub fn backward_search(&self, c: u8, iv: Interval) -> Interval {
        debug_assert!(!iv.is_empty());
        if c as usize >= self.sigma {
            return Interval::new(1, 0);
        }
        let base = self.c_array[c as usize];
        Interval::new(
            base + self.wavelet.rank(c as u32, iv.lb - 1) + 1,
            base + self.wavelet.rank(c as u32, iv.rb),
        )
    }

    /// Backward search of a whole pattern (dense codes, leftmost character
    /// first) starting from the empty-string interval.
    ///
    /// # Example
    ///
    /// ```
    /// use cdbg::sequence_store::text_from_sequences;
    /// use cdbg::PanIndex;
    ///
    /// let text = text_from_sequences(&[b"ACTACGTACGTACG"]).unwrap();
    /// let index = PanIndex::build(&text, 32);
    /// let codes = index.encode_pattern(b"ACG").unwrap();
    /// let iv = index.fm.search(&codes);
    /// assert_eq!((iv.lb, iv.rb), (2, 4));
    /// let occs: Vec<usize> = (iv.lb..=iv.rb).map(|i| index.fm.locate(i)).collect();
    /// assert_eq!(occs, vec![12, 8, 4]);
    /// ```
    pub fn search(&self, pattern: &[u8]) -> Interval {
        let mut iv = self.full_interval();
        for &c in pattern.iter().rev() {
            iv = self.backward_search(c, iv);
            if iv.is_empty() {
                return iv;
            }
        }
        iv
    }

    /// All single-character left extensions of an interval, in code order.
    /// The output intervals are pairwise disjoint and their sizes sum to the
    /// input size.
    pub fn get_intervals(&self, iv: Interval) -> Vec<(u8, Interval)> {
        debug_assert!(!iv.is_empty());
        self.wavelet
            .ranged_counts(iv.lb, iv.rb)
            .into_iter()
            .map(|(c, before, incl)| {
                let base = self.c_array[c as usize];
                (c as u8, Interval::new(base + before + 1, base + incl))
            })
            .collect()
    }

    /// `SA[lf(i)] = SA[i] - 1`, with `lf(i) = 1` when `SA[i] = 1`.
    pub fn lf(&self, i: usize) -> usize {
        let (c, rank) = self.wavelet.access_and_rank(i);
        self.c_array[c as usize] + rank
    }

    /// Inverse of [`lf`](Self::lf).
    pub fn psi(&self, i: usize) -> usize {
        debug_assert!(i >= 1 && i <= self.n);
        // c such that c_array[c] < i <= c_array[c+1]
        let c = self.c_array.partition_point(|&x| x < i) - 1;
        let k = i - self.c_array[c];
        self.wavelet
            .select(c as u32, k)
            .expect("psi: occurrence must exist")
    }

    /// `SA[i]`, recovered by walking LF until a sampled index is hit.
    pub fn locate(&self, i: usize) -> usize {
        let mut j = i;
        let mut steps = 0usize;
        while !self.samples.is_sampled(j) {
            j = self.lf(j);
            steps += 1;
        }
        self.samples.value(j) + steps
    }

    /// Rebuild the original text (dense codes) by one LF walk from the
    /// sentinel suffix.
    pub fn reconstruct_text(&self) -> Vec<u8> {
        let mut codes = vec![0u8; self.n];
        // position n holds the sentinel, code 0
        let mut i = 1usize;
        for p in (1..self.n).rev() {
            let (c, rank) = self.wavelet.access_and_rank(i);
            codes[p - 1] = c as u8;
            i = self.c_array[c as usize] + rank;
        }
        codes
    }
}
