//! Truncated LCP classification and the marking pass that finds
//! right-maximal k-mer intervals (`B_r`) and the k-mers preceding
//! left-maximal k-mers (`B_l`).
//!
//! The LCP entries are computed directly from the BWT by breadth-first
//! interval splitting on the wavelet tree, level by level in ascending LCP
//! order, and only up to level `k`: two bits per entry distinguish `< k`,
//! `= k` and `> k`. Seeding the queue with one singleton per separator
//! suffix makes distinct occurrences of the separator behave as distinct
//! characters, so no k-mer spans a sequence boundary.

use std::collections::VecDeque;

use crate::bitvec::{BitBuffer, RankBitVector};
use crate::fm_index::{FmIndex, Interval};
use crate::graph::ImplicitNode;
use crate::sequence_store::SEPARATOR;
use crate::{Error, Result};

/// Classification of one LCP entry against the threshold `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LcpClass {
    Below,
    Equal,
    Above,
}

const BELOW: u8 = 0;
const EQUAL: u8 = 1;
const ABOVE: u8 = 2;

/// Two-bit LCP classification for entries `1..=n+1`. Entries 1 and n+1 are
/// the `-1` boundaries and classify as `Below`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedLcp {
    l: Vec<u8>,
}

impl TruncatedLcp {
    /// Entry `i` for `i` in `1..=n+1`.
    pub fn class(&self, i: usize) -> LcpClass {
        match self.l[i - 1] {
            BELOW => LcpClass::Below,
            EQUAL => LcpClass::Equal,
            _ => LcpClass::Above,
        }
    }

    /// Raw codes (0 below, 1 equal, 2 above), entries `1..=n+1`.
    pub fn codes(&self) -> &[u8] {
        &self.l
    }
}

/// Validate a k-mer length against the shortest input sequence.
pub fn validate_k(k: usize, shortest_sequence_len: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::InvalidK {
            k,
            reason: "k must be >= 2".into(),
        });
    }
    if k > shortest_sequence_len {
        return Err(Error::InvalidK {
            k,
            reason: format!(
                "k must not exceed the shortest sequence length ({shortest_sequence_len})"
            ),
        });
    }
    Ok(())
}

/// Compute the `< k / = k / > k` classification of all LCP entries from the
/// BWT alone.
///
/// Runs the interval queue for LCP levels `0..=k`. Level 0 processes the
/// empty-string interval; the separator interval `[2..d]` is replaced by its
/// `d-1` singletons so that separator occurrences never share a prefix.
pub fn truncated_lcp(fm: &FmIndex, k: usize) -> TruncatedLcp {
    debug_assert!(k >= 2);
    let n = fm.n();
    let mut l = vec![ABOVE; n + 1];
    l[0] = BELOW; // entry 1
    l[n] = BELOW; // entry n+1

    // Level 0: character intervals. An interval [lb..rb] of a string of
    // length level sets entry rb+1 to its level and is queued for level+1.
    let mut current: Vec<Interval> = Vec::new();
    for (c, iv) in fm.get_intervals(fm.full_interval()) {
        if c == SEPARATOR {
            for s in iv.lb..=iv.rb {
                if l[s] == ABOVE {
                    l[s] = BELOW;
                    current.push(Interval::new(s, s));
                }
            }
        } else if l[iv.rb] == ABOVE {
            l[iv.rb] = BELOW;
            current.push(iv);
        }
    }

    for level in 1..=k {
        let mark = if level < k { BELOW } else { EQUAL };
        let mut next: Vec<Interval> = Vec::new();
        for iv in &current {
            for (_, sub) in fm.get_intervals(*iv) {
                // entry sub.rb + 1, stored at l[sub.rb]
                if l[sub.rb] == ABOVE {
                    l[sub.rb] = mark;
                    if level < k {
                        next.push(sub);
                    }
                }
            }
        }
        current = next;
    }
    TruncatedLcp { l }
}

/// The two mark vectors plus the counts derived from them.
#[derive(Debug, Clone)]
pub struct MarkVectors {
    pub b_r: RankBitVector,
    pub b_l: RankBitVector,
    pub right_max: usize,
    pub left_max: usize,
}

/// Output of the marking pass: the vectors, the initial right-maximal
/// k-mer nodes (ids `1..=right_max` in ascending interval order) and the
/// work queue holding those ids.
pub struct MarkingOutput {
    pub marks: MarkVectors,
    pub initial_nodes: Vec<ImplicitNode>,
    pub queue: VecDeque<usize>,
}

/// Run the marking pass against the truncated LCP classification.
pub fn create_bit_vectors(k: usize, fm: &FmIndex, l: &TruncatedLcp) -> MarkingOutput {
    create_bit_vectors_with(k, fm, |i| l.class(i))
}

/// Same pass over an arbitrary LCP classification source; tests feed it the
/// full LCP array thresholded at `k` to check the truncation is lossless.
pub fn create_bit_vectors_with(
    k: usize,
    fm: &FmIndex,
    class_at: impl Fn(usize) -> LcpClass,
) -> MarkingOutput {
    let n = fm.n();
    let bwt = fm.decode_bwt();
    // Running C-array: after the increment for BWT[i-1], c[ch] equals
    // LF(q) where q is the last occurrence of ch in BWT[1..i-1]. The B_l
    // marking below depends on exactly this state.
    let mut c: Vec<usize> = fm.c_array()[..fm.sigma()].to_vec();

    let mut b_r = BitBuffer::new(n);
    let mut b_l = BitBuffer::new(n);
    let mut initial_nodes = Vec::new();
    let mut queue = VecDeque::new();

    let mut lb = 1usize;
    let mut k_index = 0usize;
    let mut lastdiff = 0usize;
    let mut open = false;

    for i in 2..=n + 1 {
        let prev = bwt[i - 2] as usize;
        c[prev] += 1;
        match class_at(i) {
            LcpClass::Above => open = true,
            LcpClass::Equal => {
                open = true;
                k_index = i;
            }
            LcpClass::Below => {
                if open {
                    if k_index > lb {
                        b_r.set(lb);
                        b_r.set(i - 1);
                        initial_nodes.push(ImplicitNode {
                            len: k,
                            lb,
                            size: i - lb,
                            suffix_lb: lb,
                        });
                        queue.push_back(initial_nodes.len());
                    }
                    if lastdiff > lb {
                        for j in lb..=i - 1 {
                            let cj = bwt[j - 1];
                            if cj >= 2 {
                                b_l.set(c[cj as usize]);
                            }
                        }
                    }
                    open = false;
                }
                lb = i;
            }
        }
        if i <= n && bwt[i - 1] != bwt[i - 2] {
            lastdiff = i;
        }
    }

    // Refinement: drop B_l bits lying inside (or on the boundary of) a
    // right-maximal k-mer interval; those k-mers already live in B_r.
    let mut open = false;
    for i in 1..=n {
        if open {
            b_l.clear(i);
            if b_r.get(i) {
                open = false;
            }
        } else if b_r.get(i) {
            b_l.clear(i);
            open = true;
        }
    }

    let b_r = b_r.freeze();
    let b_l = b_l.freeze();
    let marks = MarkVectors {
        right_max: initial_nodes.len(),
        left_max: b_l.count_ones(),
        b_r,
        b_l,
    };
    MarkingOutput {
        marks,
        initial_nodes,
        queue,
    }
}
