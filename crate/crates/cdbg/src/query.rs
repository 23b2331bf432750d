//! Search operations over the implicit graph and FM-index: the node path of
//! a pattern, per-sequence occurrence queries through the document array,
//! and node occurrence listing.

use crate::fm_index::{FmIndex, Interval};
use crate::graph::{ExplicitGraph, ImplicitGraph};
use crate::kmer_marking::MarkVectors;
use crate::wavelet::WaveletTree;
use crate::{Error, PanIndex, Result};

/// Result of [`find_nodes`]: the graph nodes spelling the pattern, first to
/// last. An empty `node_ids` means the pattern does not occur.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodePath {
    pub node_ids: Vec<usize>,
    /// SA interval of the whole pattern (empty when absent).
    pub match_interval: Interval,
    /// Characters preceding the pattern in the string of the first path
    /// node; 0 when the pattern starts a node string.
    pub offset: usize,
    /// Number of interval shift steps taken while locating the suffix node;
    /// bounded by the longest node string length.
    pub psi_steps: usize,
}

impl NodePath {
    fn absent(psi_steps: usize) -> NodePath {
        NodePath {
            node_ids: Vec::new(),
            match_interval: Interval::new(1, 0),
            offset: 0,
            psi_steps,
        }
    }

    pub fn is_found(&self) -> bool {
        !self.node_ids.is_empty()
    }
}

/// Find the path of graph nodes spelling `pattern` (dense codes).
///
/// Works on the implicit graph alone: the k-length suffix of the pattern is
/// located by shifting its interval with Psi until a marked interval or a
/// stop-node index is hit, then the rest of the pattern is consumed by
/// backward search, crossing node boundaries whenever the in-node offset
/// runs out.
pub fn find_nodes(
    pattern: &[u8],
    fm: &FmIndex,
    g: &ImplicitGraph,
    marks: &MarkVectors,
) -> Result<NodePath> {
    let m = pattern.len();
    let k = g.k();
    if m < k {
        return Err(Error::PatternTooShort { len: m, k });
    }

    let suffix_iv = fm.search(&pattern[m - k..]);
    if suffix_iv.is_empty() {
        return Ok(NodePath::absent(0));
    }

    // Identify the node whose string contains the k-length suffix.
    let (mut i, mut j) = (suffix_iv.lb, suffix_iv.rb);
    let mut id = 0usize;
    let mut ell = 0usize;
    let mut psi_steps = 0usize;
    while id == 0 {
        let ones = marks.b_r.rank1(i);
        if ones % 2 == 1 || marks.b_r.get(i) {
            id = ones.div_ceil(2);
        } else if marks.b_l.rank1(j) - marks.b_l.rank1(i - 1) > 0 {
            id = g.right_max() + marks.b_l.rank1(i - 1) + 1;
        } else {
            i = fm.psi(i);
            j = fm.psi(j);
            ell += 1;
            psi_steps += 1;
            if i <= g.d() {
                // stop node; its string ends one character past the k-mers
                id = g.right_max() + g.left_max() + i;
                ell = (ell + 1)
                    .checked_sub(k)
                    .ok_or_else(|| Error::Invariant("stop-node suffix shorter than k".into()))?;
            }
        }
    }
    let mut ell = g
        .node(id)
        .len
        .checked_sub(ell + k)
        .ok_or_else(|| Error::Invariant("suffix overruns its node".into()))?;

    // Consume the rest of the pattern backward, recording a node each time
    // the offset within the current node is exhausted.
    let mut rev_path = vec![id];
    let mut iv = suffix_iv;
    let mut pos = m - k;
    while !iv.is_empty() && pos > 0 {
        iv = fm.backward_search(pattern[pos - 1], iv);
        pos -= 1;
        if iv.is_empty() {
            break;
        }
        if ell > 0 {
            ell -= 1;
        } else {
            let ones = marks.b_r.rank1(iv.lb);
            let id = if ones.is_multiple_of(2) && !marks.b_r.get(iv.lb) {
                g.right_max() + marks.b_l.rank1(iv.lb - 1) + 1
            } else {
                ones.div_ceil(2)
            };
            rev_path.push(id);
            ell = g.node(id).len - k;
        }
    }
    if iv.is_empty() {
        return Ok(NodePath::absent(psi_steps));
    }
    rev_path.reverse();
    Ok(NodePath {
        node_ids: rev_path,
        match_interval: iv,
        offset: ell,
        psi_steps,
    })
}

/// Per-sequence hits: ascending sequence numbers with positive occurrence
/// counts summing to the interval size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DocHits {
    pub entries: Vec<(usize, usize)>,
}

impl DocHits {
    pub fn total(&self) -> usize {
        self.entries.iter().map(|&(_, c)| c).sum()
    }
}

/// Which sequences the suffixes in `iv` belong to, and how many each; one
/// wavelet-tree interval split over the document array.
pub fn doc_hits(iv: Interval, doc_wt: &WaveletTree) -> DocHits {
    debug_assert!(!iv.is_empty());
    let entries = doc_wt
        .ranged_counts(iv.lb, iv.rb)
        .into_iter()
        .map(|(doc, before, incl)| (doc as usize + 1, incl - before))
        .collect();
    DocHits { entries }
}

/// Ascending text positions of a node's occurrences: the explicit position
/// list when available, otherwise `locate` over the node's SA interval.
pub fn node_occurrences(
    g: &ImplicitGraph,
    fm: &FmIndex,
    explicit: Option<&ExplicitGraph>,
    id: usize,
) -> Result<Vec<usize>> {
    if id < 1 || id > g.node_count() {
        return Err(Error::UnknownNodeId(id));
    }
    if let Some(ex) = explicit {
        return Ok(ex.node(id).pos_list.clone());
    }
    let node = g.node(id);
    let mut positions: Vec<usize> = (node.lb..node.lb + node.size)
        .map(|i| fm.locate(i))
        .collect();
    positions.sort_unstable();
    Ok(positions)
}

impl PanIndex {
    /// [`find_nodes`] over a raw pattern; unknown characters yield an
    /// absent path rather than an error.
    pub fn find_nodes(
        &self,
        pattern: &[u8],
        g: &ImplicitGraph,
        marks: &MarkVectors,
    ) -> Result<NodePath> {
        if pattern.len() < g.k() {
            return Err(Error::PatternTooShort {
                len: pattern.len(),
                k: g.k(),
            });
        }
        match self.encode_pattern(pattern) {
            Some(codes) => find_nodes(&codes, &self.fm, g, marks),
            None => Ok(NodePath::absent(0)),
        }
    }

    /// Per-sequence occurrence counts for a pattern's match interval.
    pub fn doc_hits(&self, iv: Interval) -> DocHits {
        doc_hits(iv, &self.doc_wt)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;
    use crate::oracle;
    use crate::sequence_store::{text_from_sequences, Text};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn setup(seqs: &[&[u8]], k: usize) -> (Text, PanIndex, ImplicitGraph, MarkVectors) {
        let text = text_from_sequences(seqs).unwrap();
        let index = PanIndex::build(&text, 4);
        let (g, marks) = build_graph(&index, k).unwrap();
        (text, index, g, marks)
    }

    #[test]
    fn find_nodes_running_example() {
        let (_, index, g, marks) = setup(&[b"ACTACGTACGTACG"], 3);
        // ACTA(2) -> TACG(1)
        let path = index.find_nodes(b"ACTACG", &g, &marks).unwrap();
        assert_eq!(path.node_ids, vec![2, 1]);
        assert!(path.is_found());
        // TACG(1) -> CGTA(3) -> TACG(1)
        let path = index.find_nodes(b"TACGTACG", &g, &marks).unwrap();
        assert_eq!(path.node_ids, vec![1, 3, 1]);
        // absent
        let path = index.find_nodes(b"ACGG", &g, &marks).unwrap();
        assert!(!path.is_found());
        assert!(path.node_ids.is_empty());
        // a full node string is a singleton path with offset 0
        let path = index.find_nodes(b"TACG", &g, &marks).unwrap();
        assert_eq!(path.node_ids, vec![1]);
        assert_eq!(path.offset, 0);
    }

    #[test]
    fn find_nodes_short_pattern_is_an_error() {
        let (_, index, g, marks) = setup(&[b"ACTACGTACGTACG"], 3);
        assert!(matches!(
            index.find_nodes(b"AC", &g, &marks),
            Err(Error::PatternTooShort { len: 2, k: 3 })
        ));
    }

    #[test]
    fn find_nodes_unknown_character_is_absent() {
        let (_, index, g, marks) = setup(&[b"ACTACGTACGTACG"], 3);
        let path = index.find_nodes(b"ACTN", &g, &marks).unwrap();
        assert!(!path.is_found());
        // separator and sentinel glyphs are not part of any pattern alphabet
        for pattern in [&b"CG$"[..], b"CG#", b"#AC"] {
            let path = index.find_nodes(pattern, &g, &marks).unwrap();
            assert!(!path.is_found(), "{pattern:?}");
        }
    }

    #[test]
    fn doc_hits_examples() {
        let (_, index, _, _) = setup(&[b"ACTACGTACGTACG"], 3);
        // the ACG-interval [2..4]: three hits, all in sequence 1
        let hits = index.doc_hits(Interval::new(2, 4));
        assert_eq!(hits.entries, vec![(1, 3)]);
        assert_eq!(hits.total(), 3);

        let (_, index2, _, _) = setup(&[b"ACG", b"ACT"], 2);
        // the AC-interval [3..4]: one hit per sequence
        let hits = index2.doc_hits(Interval::new(3, 4));
        assert_eq!(hits.entries, vec![(1, 1), (2, 1)]);
        // width-1 interval
        let hits = index2.doc_hits(Interval::new(5, 5));
        assert_eq!(hits.entries.len(), 1);
        assert_eq!(hits.total(), 1);
    }

    #[test]
    fn node_occurrences_examples() {
        let (_, index, g, marks) = setup(&[b"ACTACGTACGTACG"], 3);
        let ex = crate::graph::construct_explicit_graph(&g, &index.fm, &marks).unwrap();
        // with and without the explicit graph
        for explicit in [Some(&ex), None] {
            assert_eq!(
                node_occurrences(&g, &index.fm, explicit, 1).unwrap(),
                vec![3, 7, 11]
            );
            assert_eq!(
                node_occurrences(&g, &index.fm, explicit, 3).unwrap(),
                vec![5, 9]
            );
            assert_eq!(
                node_occurrences(&g, &index.fm, explicit, 4).unwrap(),
                vec![13]
            );
        }
        assert!(matches!(
            node_occurrences(&g, &index.fm, None, 5),
            Err(Error::UnknownNodeId(5))
        ));
    }

    /// Exhaustive agreement with the oracle walk on random texts: every
    /// substring maps to the right slice of node visits, every mutated
    /// absent pattern comes back empty.
    #[test]
    fn find_nodes_exhaustive_small_texts() {
        let mut rng = StdRng::seed_from_u64(59);
        for _ in 0..12 {
            let d = rng.gen_range(1..4);
            let seqs: Vec<Vec<u8>> = (0..d)
                .map(|_| {
                    let len = rng.gen_range(6..30);
                    (0..len).map(|_| b"ACGT"[rng.gen_range(0..4)]).collect()
                })
                .collect();
            let refs: Vec<&[u8]> = seqs.iter().map(|s| s.as_slice()).collect();
            let min_len = seqs.iter().map(|s| s.len()).min().unwrap();
            let k = rng.gen_range(2..=min_len.min(5));
            let (text, index, g, marks) = setup(&refs, k);
            let ex = crate::graph::construct_explicit_graph(&g, &index.fm, &marks).unwrap();
            let og = oracle::naive_compressed_graph(&text, k);
            let naive_sa = oracle::naive_suffix_array(&text);
            let longest = g.longest_node_len();

            // map a pipeline node id to its first occurrence, the node key
            let first_pos = |id: usize| ex.node(id).pos_list[0];

            for (j, seq) in seqs.iter().enumerate() {
                for from in 0..seq.len() {
                    for to in from + k..=seq.len() {
                        let pattern = &seq[from..to];
                        let codes = index.encode_pattern(pattern).unwrap();
                        let path = find_nodes(&codes, &index.fm, &g, &marks).unwrap();
                        assert!(path.is_found(), "substring must be found");
                        // oracle slice for this occurrence
                        let t0 = from + 1;
                        let t1 = to - k + 1;
                        let want: Vec<usize> = og
                            .walk_slice(j + 1, t0, t1)
                            .iter()
                            .map(|&node| og.nodes[node].positions[0])
                            .collect();
                        let got: Vec<usize> =
                            path.node_ids.iter().map(|&id| first_pos(id)).collect();
                        assert_eq!(got, want, "pattern at seq {} [{from}..{to})", j + 1);
                        // interval matches the naive scan
                        let (lb, rb) = oracle::naive_interval(&text, &naive_sa, &codes);
                        assert_eq!((path.match_interval.lb, path.match_interval.rb), (lb, rb));
                        assert!(path.psi_steps < longest.max(1));
                    }
                }
            }

            // mutated patterns that do not occur anywhere come back empty
            for _ in 0..200 {
                let j = rng.gen_range(0..seqs.len());
                let seq = &seqs[j];
                if seq.len() < k {
                    continue;
                }
                let from = rng.gen_range(0..=seq.len() - k);
                let to = rng.gen_range(from + k..=seq.len());
                let mut mutated = seq[from..to].to_vec();
                let at = rng.gen_range(0..mutated.len());
                mutated[at] = b"ACGT"[rng.gen_range(0..4)];
                let display = text.to_display();
                let occurs = display
                    .windows(mutated.len())
                    .any(|w| w == mutated.as_slice());
                if occurs {
                    continue;
                }
                let path = index.find_nodes(&mutated, &g, &marks).unwrap();
                assert!(!path.is_found(), "mutated pattern {mutated:?}");
            }
        }
    }

    #[test]
    fn queries_run_unsynchronized_across_threads() {
        let (_, index, g, marks) = setup(&[b"ACTACGTACGTACG", b"TACGTACC"], 3);
        let index = std::sync::Arc::new(index);
        let g = std::sync::Arc::new(g);
        let marks = std::sync::Arc::new(marks);
        let handles: Vec<_> = (0..4)
            .map(|t| {
                let (index, g, marks) = (index.clone(), g.clone(), marks.clone());
                std::thread::spawn(move || {
                    for _ in 0..200 {
                        let path = index.find_nodes(b"TACGTAC", &g, &marks).unwrap();
                        assert!(path.is_found(), "thread {t}");
                        let hits = index.doc_hits(path.match_interval);
                        assert_eq!(hits.total(), path.match_interval.len());
                    }
                })
            })
            .collect();
        for h in handles {
            h.join().unwrap();
        }
    }

    #[test]
    fn doc_hits_match_naive_counts() {
        let mut rng = StdRng::seed_from_u64(61);
        for _ in 0..20 {
            let d = rng.gen_range(1..5);
            let seqs: Vec<Vec<u8>> = (0..d)
                .map(|_| {
                    let len = rng.gen_range(5..40);
                    (0..len).map(|_| b"ACGT"[rng.gen_range(0..4)]).collect()
                })
                .collect();
            let refs: Vec<&[u8]> = seqs.iter().map(|s| s.as_slice()).collect();
            let text = text_from_sequences(&refs).unwrap();
            let index = PanIndex::build(&text, 4);
            for _ in 0..50 {
                let j = rng.gen_range(0..seqs.len());
                let seq = &seqs[j];
                let from = rng.gen_range(0..seq.len());
                let to = rng.gen_range(from + 1..=seq.len());
                let pattern = &seq[from..to];
                let codes = index.encode_pattern(pattern).unwrap();
                let iv = index.fm.search(&codes);
                assert!(!iv.is_empty());
                let hits = index.doc_hits(iv);
                assert_eq!(hits.total(), iv.len());
                // naive per-sequence counts
                for (doc, count) in &hits.entries {
                    let s = &seqs[doc - 1];
                    let naive = if s.len() >= pattern.len() {
                        s.windows(pattern.len()).filter(|w| *w == pattern).count()
                    } else {
                        0
                    };
                    assert_eq!(*count, naive, "sequence {doc}");
                }
                // sequences not listed have no occurrences
                for (dj, s) in seqs.iter().enumerate() {
                    if !hits.entries.iter().any(|&(doc, _)| doc == dj + 1)
                        && s.len() >= pattern.len()
                    {
                        assert_eq!(
                            s.windows(pattern.len()).filter(|w| *w == pattern).count(),
                            0
                        );
                    }
                }
            }
        }
    }
}
