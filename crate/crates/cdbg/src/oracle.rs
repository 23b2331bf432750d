//! Brute-force reference implementations for testing: naive suffix
//! structures with distinct-separator comparison, the uncompressed de Bruijn
//! graph with chain merging, and walk extraction.
//!
//! Nothing here is shared with the construction pipeline: nodes are built by
//! hashing k-mer strings and merging chains to a fixpoint, so agreement with
//! the FM-index based algorithms is meaningful evidence. Everything is
//! quadratic-ish and meant for small inputs.

use std::collections::{BTreeSet, HashMap};

use crate::sequence_store::{Text, SEPARATOR};

/// Naive all-suffix sort; returns 1-based positions in rank order.
pub fn naive_suffix_array(text: &Text) -> Vec<usize> {
    let codes = text.codes();
    let mut sa: Vec<usize> = (1..=text.n()).collect();
    sa.sort_by(|&a, &b| codes[a - 1..].cmp(&codes[b - 1..]));
    sa
}

/// Character comparison under the convention that every separator
/// occurrence is a character of its own.
fn codes_match(text: &Text, a: usize, b: usize) -> bool {
    let ca = text.code_at(a);
    ca == text.code_at(b) && ca != SEPARATOR
}

/// Length of the longest common prefix of the suffixes at 1-based positions
/// `p` and `q`, with distinct separators.
pub fn naive_lcp_value(text: &Text, p: usize, q: usize) -> usize {
    let n = text.n();
    let mut t = 0;
    while p + t <= n && q + t <= n && codes_match(text, p + t, q + t) {
        t += 1;
    }
    t
}

/// Naive suffix array, LCP array (distinct separators, `-1` boundaries at
/// indices 1 and n+1) and document array.
pub struct NaiveSuffixStructures {
    pub sa: Vec<usize>,
    /// `lcp[i-1]` is `LCP[i]` for `i` in `1..=n+1`.
    pub lcp: Vec<i64>,
    pub doc: Vec<usize>,
}

pub fn naive_suffix_structures(text: &Text) -> NaiveSuffixStructures {
    let sa = naive_suffix_array(text);
    let n = text.n();
    let mut lcp = Vec::with_capacity(n + 1);
    lcp.push(-1);
    for i in 2..=n {
        lcp.push(naive_lcp_value(text, sa[i - 2], sa[i - 1]) as i64);
    }
    lcp.push(-1);
    let doc = sa.iter().map(|&p| text.doc_of_pos(p)).collect();
    NaiveSuffixStructures { sa, lcp, doc }
}

/// SA interval of `pattern` (dense codes) by scanning the naive suffix
/// array; `(lb, rb)` 1-based, empty iff `lb > rb`.
pub fn naive_interval(text: &Text, sa: &[usize], pattern: &[u8]) -> (usize, usize) {
    let codes = text.codes();
    let matches = |&p: &usize| {
        let suffix = &codes[p - 1..];
        suffix.len() >= pattern.len() && &suffix[..pattern.len()] == pattern
    };
    let lb = sa.partition_point(|&p| codes[p - 1..].cmp(pattern) == std::cmp::Ordering::Less);
    let mut rb = lb;
    while rb < sa.len() && matches(&sa[rb]) {
        rb += 1;
    }
    (lb + 1, rb)
}

/// Distinct left/right context counts where separator occurrences are
/// pairwise distinct.
fn distinct_contexts(text: &Text, positions: impl Iterator<Item = Option<usize>>) -> usize {
    let mut codes = BTreeSet::new();
    let mut separators = 0usize;
    for p in positions {
        match p {
            // the virtual `S[0] = $` before the first suffix
            None => separators += 1,
            Some(p) => {
                let c = text.code_at(p);
                if c < 2 {
                    separators += 1;
                } else {
                    codes.insert(c);
                }
            }
        }
    }
    codes.len() + separators
}

/// All separator-free k-mers with their ascending occurrence positions.
pub fn kmer_occurrences(text: &Text, k: usize) -> HashMap<Vec<u8>, Vec<usize>> {
    let codes = text.codes();
    let mut map: HashMap<Vec<u8>, Vec<usize>> = HashMap::new();
    for i in 1..=text.n().saturating_sub(k - 1) {
        let w = &codes[i - 1..i + k - 1];
        if w.iter().all(|&c| c >= 2) {
            map.entry(w.to_vec()).or_default().push(i);
        }
    }
    map
}

/// Separator-free k-mers that are right-maximal repeats.
pub fn right_maximal_kmers(text: &Text, k: usize) -> BTreeSet<Vec<u8>> {
    kmer_occurrences(text, k)
        .into_iter()
        .filter(|(_, occ)| {
            occ.len() >= 2 && distinct_contexts(text, occ.iter().map(|&i| Some(i + k))) >= 2
        })
        .map(|(w, _)| w)
        .collect()
}

/// Left-maximal k-mer repeats.
pub fn left_maximal_kmers(text: &Text, k: usize) -> BTreeSet<Vec<u8>> {
    kmer_occurrences(text, k)
        .into_iter()
        .filter(|(_, occ)| {
            occ.len() >= 2
                && distinct_contexts(
                    text,
                    occ.iter().map(|&i| if i > 1 { Some(i - 1) } else { None }),
                ) >= 2
        })
        .map(|(w, _)| w)
        .collect()
}

/// K-mers that are not right-maximal but have an occurrence immediately
/// followed by a left-maximal k-mer occurrence; together with the
/// right-maximal set these are exactly the k-mers ending non-stop nodes.
pub fn case2_kmers(text: &Text, k: usize) -> BTreeSet<Vec<u8>> {
    let v1 = right_maximal_kmers(text, k);
    let left_max = left_maximal_kmers(text, k);
    let codes = text.codes();
    let mut v2 = BTreeSet::new();
    for (w, occ) in kmer_occurrences(text, k) {
        if v1.contains(&w) {
            continue;
        }
        let splits = occ.iter().any(|&i| {
            i + k <= text.n() && {
                let y = &codes[i..i + k];
                y.iter().all(|&c| c >= 2) && left_max.contains(y)
            }
        });
        if splits {
            v2.insert(w);
        }
    }
    v2
}

/// Number of text positions whose k-mer lies in `V1 ∪ V2`; the edge count of
/// the compressed graph.
pub fn edge_count_formula(text: &Text, k: usize) -> usize {
    let v1 = right_maximal_kmers(text, k);
    let v2 = case2_kmers(text, k);
    kmer_occurrences(text, k)
        .iter()
        .filter(|(w, _)| v1.contains(*w) || v2.contains(*w))
        .map(|(_, occ)| occ.len())
        .sum()
}

/// A node of the compressed oracle graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleNode {
    /// Dense codes; stop-node strings end with a separator or the sentinel.
    pub string: Vec<u8>,
    /// Ascending 1-based occurrence positions in the text.
    pub positions: Vec<usize>,
    /// Successor node indices in walk order.
    pub adj: Vec<usize>,
}

/// Compressed de Bruijn graph built the slow way: one node per distinct
/// k-mer (terminator windows kept distinct per sequence), chains merged to a
/// fixpoint, walks re-read from the text.
#[derive(Debug, Clone)]
pub struct OracleGraph {
    pub nodes: Vec<OracleNode>,
    /// Per sequence: node index of the start node.
    pub start_nodes: Vec<usize>,
    /// Per sequence: `(node, first window)` visits in walk order.
    pub walks: Vec<Vec<(usize, usize)>>,
    k: usize,
}

#[derive(Hash, PartialEq, Eq, Clone)]
enum KmerKey {
    Plain(Vec<u8>),
    /// Final window of sequence `j`; separators never merge across sequences.
    Terminal(usize),
}

pub fn naive_compressed_graph(text: &Text, k: usize) -> OracleGraph {
    assert!(k >= 2);
    let codes = text.codes();
    let d = text.d();
    let mut seq_spans = Vec::with_capacity(d);
    let mut start = 1usize;
    for &end in text.doc_ends() {
        seq_spans.push((start, end));
        start = end + 1;
    }

    // Uncompressed nodes and per-sequence window walks.
    let mut ids: HashMap<KmerKey, usize> = HashMap::new();
    let mut kmer_of: Vec<Vec<u8>> = Vec::new();
    let mut window_walks: Vec<Vec<usize>> = Vec::with_capacity(d);
    for (j, &(s, e)) in seq_spans.iter().enumerate() {
        let len = e - s + 1;
        assert!(len > k, "k exceeds sequence length");
        let mut walk = Vec::with_capacity(len - k + 1);
        for t in 0..=len - k {
            let w = &codes[s + t - 1..s + t + k - 1];
            let key = if w.iter().any(|&c| c < 2) {
                KmerKey::Terminal(j)
            } else {
                KmerKey::Plain(w.to_vec())
            };
            let uid = *ids.entry(key).or_insert_with(|| {
                kmer_of.push(w.to_vec());
                kmer_of.len() - 1
            });
            walk.push(uid);
        }
        window_walks.push(walk);
    }
    let n_uncompressed = kmer_of.len();

    let mut succ: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n_uncompressed];
    let mut pred: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n_uncompressed];
    for (j, walk) in window_walks.iter().enumerate() {
        for pair in walk.windows(2) {
            succ[pair[0]].insert(pair[1]);
            pred[pair[1]].insert(pair[0]);
        }
        // A walk entering a node at a sequence start acts as one more
        // distinct predecessor (the separator or sentinel in front of the
        // sequence), so such a node never merges into a predecessor.
        pred[walk[0]].insert(n_uncompressed + j);
    }

    // u -> v merges when u is the only predecessor of v and v the only
    // successor of u; following these pointers from the heads yields the
    // maximal chains in one pass.
    let mut next: Vec<Option<usize>> = vec![None; n_uncompressed];
    let mut has_prev = vec![false; n_uncompressed];
    for u in 0..n_uncompressed {
        if succ[u].len() == 1 {
            let v = *succ[u].iter().next().unwrap();
            if v != u && pred[v].len() == 1 {
                next[u] = Some(v);
                has_prev[v] = true;
            }
        }
    }

    let mut chain_of = vec![usize::MAX; n_uncompressed];
    let mut nodes: Vec<OracleNode> = Vec::new();
    let mut chain_span = Vec::new(); // number of windows a chain covers
    for head in 0..n_uncompressed {
        if has_prev[head] {
            continue;
        }
        let idx = nodes.len();
        let mut string = kmer_of[head].clone();
        let mut span = 1;
        chain_of[head] = idx;
        let mut u = head;
        while let Some(v) = next[u] {
            string.push(*kmer_of[v].last().unwrap());
            chain_of[v] = idx;
            span += 1;
            u = v;
        }
        nodes.push(OracleNode {
            string,
            positions: Vec::new(),
            adj: Vec::new(),
        });
        chain_span.push(span);
    }
    assert!(
        chain_of.iter().all(|&c| c != usize::MAX),
        "chain cover incomplete"
    );

    // Re-walk each sequence through the merged nodes, collecting positions,
    // adjacency in visit order, and the walks themselves.
    let mut walks = Vec::with_capacity(d);
    let mut start_nodes = Vec::with_capacity(d);
    for (j, walk) in window_walks.iter().enumerate() {
        let (s, _) = seq_spans[j];
        let mut visits = Vec::new();
        let mut t = 0usize;
        while t < walk.len() {
            let node = chain_of[walk[t]];
            let span = chain_span[node];
            for q in 0..span {
                assert_eq!(chain_of[walk[t + q]], node, "chain misaligned with walk");
            }
            nodes[node].positions.push(s + t);
            visits.push((node, t + 1));
            t += span;
        }
        start_nodes.push(visits[0].0);
        for pair in visits.windows(2) {
            nodes[pair[0].0].adj.push(pair[1].0);
        }
        walks.push(visits);
    }

    OracleGraph {
        nodes,
        start_nodes,
        walks,
        k,
    }
}

impl OracleGraph {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.nodes.iter().map(|n| n.adj.len()).sum()
    }

    pub fn longest_node_len(&self) -> usize {
        self.nodes.iter().map(|n| n.string.len()).max().unwrap_or(0)
    }

    /// Node path covering windows `t0..=t1` (1-based) of sequence `j`
    /// (1-based); the slice of the walk a pattern spanning those windows
    /// traverses.
    pub fn walk_slice(&self, j: usize, t0: usize, t1: usize) -> Vec<usize> {
        self.walks[j - 1]
            .iter()
            .filter(|&&(node, start)| {
                let end = start + (self.nodes[node].string.len() - self.k);
                start <= t1 && end >= t0
            })
            .map(|&(node, _)| node)
            .collect()
    }

    /// Reconstruct every sequence (with terminator) from its walk by
    /// overlapping node strings, independently of the construction path.
    pub fn reconstruct_sequences(&self) -> Vec<Vec<u8>> {
        self.walks
            .iter()
            .map(|walk| {
                let mut out: Vec<u8> = Vec::new();
                for &(node, _) in walk {
                    let s = &self.nodes[node].string;
                    if out.is_empty() {
                        out.extend_from_slice(s);
                    } else {
                        out.extend_from_slice(&s[self.k - 1..]);
                    }
                }
                out
            })
            .collect()
    }
}

/// Order-independent graph form used to compare pipeline output with the
/// oracle: nodes sorted by first occurrence, adjacency re-indexed into that
/// order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalGraph {
    /// `(string codes, ascending positions)` sorted by first position.
    pub nodes: Vec<(Vec<u8>, Vec<usize>)>,
    pub adj: Vec<Vec<usize>>,
    pub start_nodes: Vec<usize>,
}

impl CanonicalGraph {
    pub fn from_oracle(g: &OracleGraph) -> CanonicalGraph {
        let strings: Vec<Vec<u8>> = g.nodes.iter().map(|n| n.string.clone()).collect();
        let positions: Vec<Vec<usize>> = g.nodes.iter().map(|n| n.positions.clone()).collect();
        let adj: Vec<Vec<usize>> = g.nodes.iter().map(|n| n.adj.clone()).collect();
        Self::build(strings, positions, adj, g.start_nodes.clone())
    }

    pub fn build(
        strings: Vec<Vec<u8>>,
        positions: Vec<Vec<usize>>,
        adj: Vec<Vec<usize>>,
        start_nodes: Vec<usize>,
    ) -> CanonicalGraph {
        let mut order: Vec<usize> = (0..strings.len()).collect();
        order.sort_by_key(|&i| positions[i][0]);
        let mut rank = vec![0usize; strings.len()];
        for (r, &i) in order.iter().enumerate() {
            rank[i] = r;
        }
        CanonicalGraph {
            nodes: order
                .iter()
                .map(|&i| (strings[i].clone(), positions[i].clone()))
                .collect(),
            adj: order
                .iter()
                .map(|&i| adj[i].iter().map(|&t| rank[t]).collect())
                .collect(),
            start_nodes: start_nodes.into_iter().map(|i| rank[i]).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence_store::text_from_sequences;

    fn decode(text: &Text, codes: &[u8]) -> String {
        codes
            .iter()
            .map(|&c| text.alphabet().decode(c) as char)
            .collect()
    }

    #[test]
    fn naive_structures_running_example() {
        let text = text_from_sequences(&[b"ACTACGTACGTACG"]).unwrap();
        let s = naive_suffix_structures(&text);
        assert_eq!(
            s.sa,
            vec![15, 12, 8, 4, 1, 13, 9, 5, 2, 14, 10, 6, 11, 7, 3]
        );
        assert_eq!(
            s.lcp,
            vec![-1, 0, 3, 7, 2, 0, 2, 6, 1, 0, 1, 5, 0, 4, 8, -1]
        );
    }

    #[test]
    fn naive_structures_tiny() {
        let text = text_from_sequences(&[b"A"]).unwrap();
        let s = naive_suffix_structures(&text);
        assert_eq!(s.sa, vec![2, 1]);
        assert_eq!(s.lcp, vec![-1, 0, -1]);

        let text = text_from_sequences(&[b"ACG", b"ACT"]).unwrap();
        let s = naive_suffix_structures(&text);
        assert_eq!(s.sa, vec![8, 4, 1, 5, 2, 6, 3, 7]);
    }

    #[test]
    fn distinct_separator_lcp() {
        // suffixes "G#ACG$"-style share nothing through the separator
        let text = text_from_sequences(&[b"AG", b"AG"]).unwrap();
        // S = A G # A G $, suffixes 1 (AG#AG$) and 4 (AG$): lcp stops at 'G'
        assert_eq!(naive_lcp_value(&text, 1, 4), 2);
        // suffixes 3 (#AG$) vs ... any other separator comparison is 0
        assert_eq!(naive_lcp_value(&text, 3, 6), 0);
    }

    #[test]
    fn compressed_graph_running_example() {
        let text = text_from_sequences(&[b"ACTACGTACGTACG"]).unwrap();
        let g = naive_compressed_graph(&text, 3);
        assert_eq!(g.node_count(), 4);
        let mut by_string: HashMap<String, &OracleNode> = HashMap::new();
        for n in &g.nodes {
            by_string.insert(decode(&text, &n.string), n);
        }
        assert_eq!(by_string["TACG"].positions, vec![3, 7, 11]);
        assert_eq!(by_string["CGTA"].positions, vec![5, 9]);
        assert_eq!(by_string["ACTA"].positions, vec![1]);
        assert_eq!(by_string["CG$"].positions, vec![13]);
        // adjacency in walk order: TACG -> CGTA, CGTA, CG$
        let tacg_adj: Vec<String> = by_string["TACG"]
            .adj
            .iter()
            .map(|&i| decode(&text, &g.nodes[i].string))
            .collect();
        assert_eq!(tacg_adj, vec!["CGTA", "CGTA", "CG$"]);
        assert_eq!(decode(&text, &g.nodes[g.start_nodes[0]].string), "ACTA");
        assert_eq!(g.edge_count(), 6);
        assert_eq!(g.longest_node_len(), 4);
    }

    #[test]
    fn compressed_graph_self_loop_text() {
        let text = text_from_sequences(&[b"AAAA"]).unwrap();
        let g = naive_compressed_graph(&text, 2);
        // AA has a self-loop, so it cannot merge; A$ is the stop node.
        assert_eq!(g.node_count(), 2);
        let strings: BTreeSet<String> = g.nodes.iter().map(|n| decode(&text, &n.string)).collect();
        assert!(strings.contains("AA"));
        assert!(strings.contains("A$"));
    }

    #[test]
    fn compressed_graph_single_chain() {
        let text = text_from_sequences(&[b"ACGTG"]).unwrap();
        let g = naive_compressed_graph(&text, 2);
        assert_eq!(g.node_count(), 1);
        assert_eq!(decode(&text, &g.nodes[0].string), "ACGTG$");
        assert_eq!(g.nodes[0].positions, vec![1]);
        assert!(g.nodes[0].adj.is_empty());
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn walks_reconstruct_sequences() {
        let text = text_from_sequences(&[b"ACGTACGT", b"TTACGTT", b"ACGT"]).unwrap();
        let g = naive_compressed_graph(&text, 2);
        let rebuilt = g.reconstruct_sequences();
        let expected = text.split_sequences();
        for (j, seq) in rebuilt.iter().enumerate() {
            let decoded = decode(&text, seq);
            assert_eq!(decoded.as_bytes(), expected[j].as_slice(), "sequence {j}");
        }
    }

    #[test]
    fn v1_v2_running_example() {
        let text = text_from_sequences(&[b"ACTACGTACGTACG"]).unwrap();
        let v1 = right_maximal_kmers(&text, 3);
        assert_eq!(v1.len(), 1);
        assert_eq!(decode(&text, v1.iter().next().unwrap()), "ACG");
        let v2 = case2_kmers(&text, 3);
        let v2_strings: BTreeSet<String> = v2.iter().map(|w| decode(&text, w)).collect();
        assert_eq!(
            v2_strings,
            BTreeSet::from(["CTA".to_string(), "GTA".to_string()])
        );
        assert_eq!(edge_count_formula(&text, 3), 6);
    }
}
