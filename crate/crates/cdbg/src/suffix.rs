//! Suffix array (SA-IS), BWT and document array of the concatenated text.
//!
//! Suffix array indices and text positions are 1-based everywhere in the
//! public API; `sa.pos_at_rank(1)` is always `n` because the sentinel suffix
//! sorts first.

use crate::sequence_store::{Text, SENTINEL};

/// Suffix array over 1-based text positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuffixArray {
    sa: Vec<usize>,
}

impl SuffixArray {
    pub fn n(&self) -> usize {
        self.sa.len()
    }

    /// Text position of the suffix with 1-based rank `r`.
    pub fn pos_at_rank(&self, r: usize) -> usize {
        self.sa[r - 1]
    }

    /// 1-based positions in rank order.
    pub fn positions(&self) -> &[usize] {
        &self.sa
    }
}

/// BWT over dense codes; `code_at(i) = S[SA[i]-1]`, sentinel where
/// `SA[i] = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BwtString {
    bwt: Vec<u8>,
}

impl BwtString {
    pub fn n(&self) -> usize {
        self.bwt.len()
    }

    /// Code preceding the suffix at 1-based SA index `i`.
    pub fn code_at(&self, i: usize) -> u8 {
        self.bwt[i - 1]
    }

    pub fn codes(&self) -> &[u8] {
        &self.bwt
    }
}

/// Per-SA-entry sequence numbers in `1..=d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DocumentArray {
    docs: Vec<usize>,
}

impl DocumentArray {
    /// Sequence number of the suffix at 1-based SA index `i`.
    pub fn doc_at(&self, i: usize) -> usize {
        self.docs[i - 1]
    }

    pub fn docs(&self) -> &[usize] {
        &self.docs
    }
}

/// Build the suffix array by induced sorting (SA-IS), linear in `n`.
pub fn build_suffix_array(text: &Text) -> SuffixArray {
    let symbols: Vec<u32> = text.codes().iter().map(|&c| c as u32).collect();
    let sa0 = sais(&symbols, text.sigma());
    SuffixArray {
        sa: sa0.into_iter().map(|p| p + 1).collect(),
    }
}

pub fn build_bwt(text: &Text, sa: &SuffixArray) -> BwtString {
    let bwt = sa
        .positions()
        .iter()
        .map(|&p| {
            if p == 1 {
                SENTINEL
            } else {
                text.code_at(p - 1)
            }
        })
        .collect();
    BwtString { bwt }
}

pub fn build_document_array(sa: &SuffixArray, text: &Text) -> DocumentArray {
    let docs = sa.positions().iter().map(|&p| text.doc_of_pos(p)).collect();
    DocumentArray { docs }
}

const EMPTY: usize = usize::MAX;

/// SA-IS on a symbol slice whose last symbol is the unique minimum. Returns
/// 0-based suffix positions in lexicographic order.
fn sais(s: &[u32], sigma: usize) -> Vec<usize> {
    let n = s.len();
    match n {
        0 => return Vec::new(),
        1 => return vec![0],
        _ => {}
    }

    // S/L classification; the sentinel is S-type.
    let mut stype = vec![false; n];
    stype[n - 1] = true;
    for i in (0..n - 1).rev() {
        stype[i] = s[i] < s[i + 1] || (s[i] == s[i + 1] && stype[i + 1]);
    }
    let is_lms = |i: usize| i > 0 && stype[i] && !stype[i - 1];

    let mut bucket = vec![0usize; sigma];
    for &c in s {
        bucket[c as usize] += 1;
    }

    let mut sa = vec![EMPTY; n];

    // First pass: drop LMS suffixes at bucket tails in text order, induce,
    // which sorts them by LMS substring.
    let mut tails = bucket_tails(&bucket);
    for i in 1..n {
        if is_lms(i) {
            tails[s[i] as usize] -= 1;
            sa[tails[s[i] as usize]] = i;
        }
    }
    induce(&mut sa, s, &bucket, &stype);

    // Name the LMS substrings in sorted order.
    let lms_count = (1..n).filter(|&i| is_lms(i)).count();
    let mut names = vec![EMPTY; n];
    let mut name = 0usize;
    let mut prev = EMPTY;
    for &j in sa.iter().filter(|&&j| j != EMPTY && is_lms(j)) {
        if prev != EMPTY && !lms_substrings_equal(s, prev, j, &is_lms) {
            name += 1;
        }
        names[j] = name;
        prev = j;
    }
    let num_names = name + 1;

    let lms_text_order: Vec<usize> = (1..n).filter(|&i| is_lms(i)).collect();
    let reduced: Vec<u32> = lms_text_order.iter().map(|&j| names[j] as u32).collect();

    // Order of the LMS suffixes, as indices into `lms_text_order`.
    let lms_order: Vec<usize> = if num_names == lms_count {
        let mut order = vec![0usize; lms_count];
        for (i, &nm) in reduced.iter().enumerate() {
            order[nm as usize] = i;
        }
        order
    } else {
        sais(&reduced, num_names)
    };

    // Final pass: place LMS suffixes in their true order, induce the rest.
    sa.fill(EMPTY);
    let mut tails = bucket_tails(&bucket);
    for &idx in lms_order.iter().rev() {
        let j = lms_text_order[idx];
        tails[s[j] as usize] -= 1;
        sa[tails[s[j] as usize]] = j;
    }
    induce(&mut sa, s, &bucket, &stype);
    sa
}

fn bucket_heads(bucket: &[usize]) -> Vec<usize> {
    let mut heads = Vec::with_capacity(bucket.len());
    let mut sum = 0;
    for &b in bucket {
        heads.push(sum);
        sum += b;
    }
    heads
}

fn bucket_tails(bucket: &[usize]) -> Vec<usize> {
    let mut tails = Vec::with_capacity(bucket.len());
    let mut sum = 0;
    for &b in bucket {
        sum += b;
        tails.push(sum);
    }
    tails
}

fn induce(sa: &mut [usize], s: &[u32], bucket: &[usize], stype: &[bool]) {
    let n = s.len();
    // L-type left to right from bucket heads.
    let mut heads = bucket_heads(bucket);
    for i in 0..n {
        let j = sa[i];
        if j != EMPTY && j > 0 && !stype[j - 1] {
            let c = s[j - 1] as usize;
            sa[heads[c]] = j - 1;
            heads[c] += 1;
        }
    }
    // S-type right to left from bucket tails; overwrites the provisional
    // LMS placements with their induced order.
    let mut tails = bucket_tails(bucket);
    for i in (0..n).rev() {
        let j = sa[i];
        if j != EMPTY && j > 0 && stype[j - 1] {
            let c = s[j - 1] as usize;
            tails[c] -= 1;
            sa[tails[c]] = j - 1;
        }
    }
}

fn lms_substrings_equal(s: &[u32], a: usize, b: usize, is_lms: &impl Fn(usize) -> bool) -> bool {
    let n = s.len();
    if a == b {
        return true;
    }
    // The sentinel's LMS substring is the single sentinel and unique.
    if a == n - 1 || b == n - 1 {
        return false;
    }
    let mut t = 0;
    loop {
        if s[a + t] != s[b + t] {
            return false;
        }
        if t > 0 {
            let la = is_lms(a + t);
            let lb = is_lms(b + t);
            if la != lb {
                return false;
            }
            if la && lb {
                return true;
            }
        }
        t += 1;
        if a + t >= n || b + t >= n {
            return false;
        }
    }
}
