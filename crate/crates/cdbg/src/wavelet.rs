//! Balanced binary wavelet tree over a dense integer alphabet.
//!
//! The tree splits the code range `[0, sigma)` in halves; each internal node
//! stores one [`RankBitVector`] where a one sends a symbol to the right
//! child. All sequence positions are 1-based. Used both for the BWT (symbols
//! are character codes) and for the document array (symbols are sequence
//! numbers).

use crate::bitvec::{BitBuffer, RankBitVector};

const LEAF: usize = usize::MAX;

#[derive(Debug, Clone)]
struct WtNode {
    lo: u32,
    hi: u32,
    bits: RankBitVector,
    left: usize,
    right: usize,
}

#[derive(Debug, Clone)]
pub struct WaveletTree {
    len: usize,
    sigma: u32,
    nodes: Vec<WtNode>,
}

impl WaveletTree {
    /// Build over `symbols`, all of which must be `< sigma`. `sigma >= 1`.
    pub fn new(symbols: &[u32], sigma: u32) -> Self {
        assert!(sigma >= 1);
        debug_assert!(symbols.iter().all(|&s| s < sigma));
        let mut tree = WaveletTree {
            len: symbols.len(),
            sigma,
            nodes: Vec::new(),
        };
        if sigma > 1 {
            tree.build(symbols.to_vec(), 0, sigma);
        }
        tree
    }

    // Appends the subtree for code range [lo, hi) in pre-order and returns
    // its root index.
    fn build(&mut self, symbols: Vec<u32>, lo: u32, hi: u32) -> usize {
        let mid = lo + (hi - lo) / 2;
        let mut buf = BitBuffer::new(symbols.len());
        let mut left_syms = Vec::new();
        let mut right_syms = Vec::new();
        for (i, &s) in symbols.iter().enumerate() {
            if s >= mid {
                buf.set(i + 1);
                right_syms.push(s);
            } else {
                left_syms.push(s);
            }
        }
        drop(symbols);
        let idx = self.nodes.len();
        self.nodes.push(WtNode {
            lo,
            hi,
            bits: buf.freeze(),
            left: LEAF,
            right: LEAF,
        });
        if mid - lo > 1 {
            let left = self.build(left_syms, lo, mid);
            self.nodes[idx].left = left;
        }
        if hi - mid > 1 {
            let right = self.build(right_syms, mid, hi);
            self.nodes[idx].right = right;
        }
        idx
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn sigma(&self) -> u32 {
        self.sigma
    }

    /// Symbol at 1-based position `i`.
    pub fn access(&self, i: usize) -> u32 {
        self.access_and_rank(i).0
    }

    /// Symbol at 1-based position `i` together with its inclusive rank, i.e.
    /// the number of occurrences of that symbol in positions `1..=i`.
    pub fn access_and_rank(&self, i: usize) -> (u32, usize) {
        debug_assert!(i >= 1 && i <= self.len);
        if self.sigma == 1 {
            return (0, i);
        }
        let mut node = 0;
        let mut pos = i;
        loop {
            let n = &self.nodes[node];
            let ones = n.bits.rank1(pos);
            let mid = n.lo + (n.hi - n.lo) / 2;
            if n.bits.get(pos) {
                pos = ones;
                if n.right == LEAF {
                    return (n.hi - 1, pos);
                }
                debug_assert_eq!(self.nodes[n.right].lo, mid);
                node = n.right;
            } else {
                pos -= ones;
                if n.left == LEAF {
                    return (n.lo, pos);
                }
                node = n.left;
            }
        }
    }

    /// Number of occurrences of `symbol` in positions `1..=i`.
    pub fn rank(&self, symbol: u32, i: usize) -> usize {
        debug_assert!(i <= self.len);
        if symbol >= self.sigma {
            return 0;
        }
        if self.sigma == 1 {
            return i;
        }
        let mut node = 0;
        let mut cnt = i;
        loop {
            let n = &self.nodes[node];
            let mid = n.lo + (n.hi - n.lo) / 2;
            let ones = n.bits.rank1(cnt);
            if symbol >= mid {
                cnt = ones;
                if n.right == LEAF {
                    return cnt;
                }
                node = n.right;
            } else {
                cnt -= ones;
                if n.left == LEAF {
                    return cnt;
                }
                node = n.left;
            }
        }
    }

    /// 1-based position of the `k`-th occurrence of `symbol`, if it exists.
    pub fn select(&self, symbol: u32, k: usize) -> Option<usize> {
        if symbol >= self.sigma || k == 0 {
            return None;
        }
        if self.sigma == 1 {
            return (k <= self.len).then_some(k);
        }
        // Walk down to the leaf, then map the occurrence index back up.
        let mut path = Vec::new();
        let mut node = 0;
        loop {
            let n = &self.nodes[node];
            let mid = n.lo + (n.hi - n.lo) / 2;
            let go_right = symbol >= mid;
            path.push((node, go_right));
            let next = if go_right { n.right } else { n.left };
            if next == LEAF {
                break;
            }
            node = next;
        }
        let mut k = k;
        for &(node, went_right) in path.iter().rev() {
            let bits = &self.nodes[node].bits;
            k = if went_right {
                bits.select1(k)?
            } else {
                bits.select0(k)?
            };
        }
        Some(k)
    }

    /// For every symbol occurring in positions `lb..=rb`, report
    /// `(symbol, rank_before, rank_incl)` where `rank_before` is the number
    /// of its occurrences in `1..lb` and `rank_incl` the number in `1..=rb`.
    /// Symbols are reported in ascending order and `rank_incl > rank_before`.
    ///
    /// This is the wavelet-tree interval splitting behind `getIntervals`: the
    /// cost is proportional to the output size times the tree depth, not to
    /// the alphabet size.
    pub fn ranged_counts(&self, lb: usize, rb: usize) -> Vec<(u32, usize, usize)> {
        debug_assert!(lb >= 1 && rb <= self.len);
        let mut out = Vec::new();
        if rb < lb {
            return out;
        }
        if self.sigma == 1 {
            out.push((0, lb - 1, rb));
            return out;
        }
        self.split(0, lb - 1, rb, &mut out);
        out
    }

    fn split(&self, node: usize, a: usize, b: usize, out: &mut Vec<(u32, usize, usize)>) {
        let n = &self.nodes[node];
        let ones_a = n.bits.rank1(a);
        let ones_b = n.bits.rank1(b);
        let zeros_a = a - ones_a;
        let zeros_b = b - ones_b;
        if zeros_b > zeros_a {
            if n.left == LEAF {
                out.push((n.lo, zeros_a, zeros_b));
            } else {
                self.split(n.left, zeros_a, zeros_b, out);
            }
        }
        if ones_b > ones_a {
            if n.right == LEAF {
                out.push((n.hi - 1, ones_a, ones_b));
            } else {
                self.split(n.right, ones_a, ones_b, out);
            }
        }
    }

    /// Bit vectors of the internal nodes in pre-order. The shape is uniquely
    /// determined by `sigma`, so this is all the serializer needs.
    pub(crate) fn node_bits(&self) -> impl Iterator<Item = &RankBitVector> {
        self.nodes.iter().map(|n| &n.bits)
    }

    pub(crate) fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Rebuild from pre-order node bit vectors, the inverse of [`node_bits`].
    pub(crate) fn from_node_bits(
        len: usize,
        sigma: u32,
        bits: &mut impl Iterator<Item = RankBitVector>,
    ) -> Option<Self> {
        let mut tree = WaveletTree {
            len,
            sigma,
            nodes: Vec::new(),
        };
        if sigma > 1 {
            tree.rebuild(0, sigma, bits)?;
        }
        Some(tree)
    }

    fn rebuild(
        &mut self,
        lo: u32,
        hi: u32,
        bits: &mut impl Iterator<Item = RankBitVector>,
    ) -> Option<usize> {
        let mid = lo + (hi - lo) / 2;
        let idx = self.nodes.len();
        self.nodes.push(WtNode {
            lo,
            hi,
            bits: bits.next()?,
            left: LEAF,
            right: LEAF,
        });
        if mid - lo > 1 {
            let left = self.rebuild(lo, mid, bits)?;
            self.nodes[idx].left = left;
        }
        if hi - mid > 1 {
            let right = self.rebuild(mid, hi, bits)?;
            self.nodes[idx].right = right;
        }
        Some(idx)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn naive_rank(symbols: &[u32], symbol: u32, i: usize) -> usize {
        symbols[..i].iter().filter(|&&s| s == symbol).count()
    }

    #[test]
    fn access_rank_select_match_naive() {
        let mut rng = StdRng::seed_from_u64(11);
        for &sigma in &[1u32, 2, 3, 5, 6, 17] {
            let n = 300;
            let symbols: Vec<u32> = (0..n).map(|_| rng.gen_range(0..sigma)).collect();
            let wt = WaveletTree::new(&symbols, sigma);
            for i in 1..=n {
                assert_eq!(wt.access(i), symbols[i - 1]);
                let (sym, r) = wt.access_and_rank(i);
                assert_eq!(r, naive_rank(&symbols, sym, i));
            }
            for s in 0..sigma {
                for i in 0..=n {
                    assert_eq!(wt.rank(s, i), naive_rank(&symbols, s, i), "sigma={sigma}");
                }
                let total = naive_rank(&symbols, s, n);
                for k in 1..=total {
                    let p = wt.select(s, k).unwrap();
                    assert_eq!(symbols[p - 1], s);
                    assert_eq!(naive_rank(&symbols, s, p), k);
                }
                assert_eq!(wt.select(s, total + 1), None);
            }
        }
    }

    #[test]
    fn ranged_counts_cover_interval() {
        let mut rng = StdRng::seed_from_u64(13);
        let sigma = 7;
        let n = 200;
        let symbols: Vec<u32> = (0..n).map(|_| rng.gen_range(0..sigma)).collect();
        let wt = WaveletTree::new(&symbols, sigma);
        for _ in 0..200 {
            let lb = rng.gen_range(1..=n);
            let rb = rng.gen_range(lb..=n);
            let got = wt.ranged_counts(lb, rb);
            // ascending symbols, counts match the naive scan, sizes cover [lb..rb]
            let mut prev = None;
            let mut covered = 0;
            for &(s, before, incl) in &got {
                assert!(prev.is_none_or(|p| p < s));
                prev = Some(s);
                assert_eq!(before, naive_rank(&symbols, s, lb - 1));
                assert_eq!(incl, naive_rank(&symbols, s, rb));
                covered += incl - before;
            }
            assert_eq!(covered, rb - lb + 1);
        }
    }

    #[test]
    fn degenerate_single_symbol() {
        let symbols = vec![0u32; 9];
        let wt = WaveletTree::new(&symbols, 1);
        assert_eq!(wt.access(5), 0);
        assert_eq!(wt.rank(0, 9), 9);
        assert_eq!(wt.select(0, 3), Some(3));
        assert_eq!(wt.ranged_counts(2, 4), vec![(0, 1, 4)]);
    }
}
