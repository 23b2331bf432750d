//! Compressed de Bruijn graphs of pan-genomes, built directly on an FM-index.
//!
//! A pan-genome here is a set of related sequences concatenated into one text
//! `S = S1 # S2 # ... # Sd $`. For a fixed k-mer length `k`, this crate
//! constructs the compressed de Bruijn graph of `S` without ever
//! materialising the uncompressed graph: right-maximal k-mers are located
//! through a truncated LCP computation on the BWT, and nodes are grown by
//! repeated backward steps on the wavelet tree. The resulting implicit graph
//! stores four integers per node and, together with the FM-index, supports
//! full-text pattern search that returns the path of graph nodes spelling
//! the pattern. A document array answers which input sequences a pattern or
//! node occurs in.
//!
//! The main entry points:
//!
//! - [`SequenceStore::from_fasta`] / [`Text`]: input handling.
//! - [`PanIndex::build`]: FM-index plus document array (k-independent).
//! - [`graph::create_compressed_graph`] / [`graph::construct_explicit_graph`]:
//!   the graph for a chosen `k`.
//! - [`query::find_nodes`], [`query::doc_hits`]: search.
//!
//! Runnable walkthroughs live in the crate's `examples/` directory, and the
//! `cdbg` binary wraps the same functionality behind `build`, `graph`,
//! `search` and `export` subcommands.

// Suffix array indices and text positions are 1-based throughout; loops over
// them index several parallel structures, which reads clearer than
// enumerate() with offset juggling.
#![allow(clippy::needless_range_loop)]

pub mod bitvec;
pub mod cli;
pub mod fm_index;
pub mod graph;
pub mod io;
pub mod kmer_marking;
pub mod oracle;
pub mod query;
pub mod sequence_store;
pub mod suffix;
pub mod wavelet;

pub use fm_index::{FmIndex, Interval};
pub use graph::{ExplicitGraph, ImplicitGraph, ImplicitNode};
pub use kmer_marking::MarkVectors;
pub use sequence_store::{SequenceStore, Text};

use suffix::{build_bwt, build_document_array, build_suffix_array};
use wavelet::WaveletTree;

/// Errors across ingestion, construction, queries and file handling.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("ingestion error in record '{record}': {reason}")]
    Ingest { record: String, reason: String },
    #[error("invalid k = {k}: {reason}")]
    InvalidK { k: usize, reason: String },
    #[error("pattern of length {len} is shorter than k = {k}")]
    PatternTooShort { len: usize, k: usize },
    #[error("unknown node id {0}")]
    UnknownNodeId(usize),
    #[error("graph construction invariant violated: {0}")]
    Invariant(String),
    #[error("bad file format: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Default suffix array sampling rate for [`PanIndex::build`].
pub const DEFAULT_SAMPLE_RATE: u32 = 32;

/// The k-independent index of a pan-genome: FM-index over the BWT plus the
/// wavelet tree of the document array. One `PanIndex` serves graph
/// construction for any number of k values.
///
/// # Example
///
/// ```
/// use cdbg::graph::build_graph;
/// use cdbg::sequence_store::text_from_sequences;
/// use cdbg::PanIndex;
///
/// let text = text_from_sequences(&[b"ACTACGTACGTACG"]).unwrap();
/// let index = PanIndex::build(&text, 32);
/// let (graph, marks) = build_graph(&index, 3).unwrap();
///
/// let path = index.find_nodes(b"TACGTACG", &graph, &marks).unwrap();
/// assert_eq!(path.node_ids, vec![1, 3, 1]);
/// assert_eq!(index.doc_hits(path.match_interval).entries, vec![(1, 2)]);
/// ```
#[derive(Debug, Clone)]
pub struct PanIndex {
    pub text_meta: sequence_store::TextMeta,
    pub fm: FmIndex,
    pub doc_wt: WaveletTree,
}

impl PanIndex {
    /// Build the index from a concatenated text. `sample_rate` controls the
    /// suffix array sampling used by `locate`.
    pub fn build(text: &Text, sample_rate: u32) -> PanIndex {
        let sa = build_suffix_array(text);
        let bwt = build_bwt(text, &sa);
        let doc = build_document_array(&sa, text);
        let fm = FmIndex::new(text, &sa, &bwt, sample_rate);
        let doc_symbols: Vec<u32> = doc.docs().iter().map(|&j| (j - 1) as u32).collect();
        let doc_wt = WaveletTree::new(&doc_symbols, text.d() as u32);
        PanIndex {
            text_meta: text.meta(),
            fm,
            doc_wt,
        }
    }

    pub fn n(&self) -> usize {
        self.fm.n()
    }

    pub fn d(&self) -> usize {
        self.fm.d()
    }

    /// Length of the shortest input sequence, derived from the document
    /// array. Bounds the admissible k values.
    pub fn shortest_sequence_len(&self) -> usize {
        // Each sequence contributes its characters plus one terminator.
        self.doc_wt
            .ranged_counts(1, self.n())
            .iter()
            .map(|&(_, before, incl)| incl - before - 1)
            .min()
            .unwrap_or(0)
    }

    /// Encode a raw pattern into dense codes; `None` if it contains a
    /// character the index has never seen (such a pattern cannot occur).
    pub fn encode_pattern(&self, pattern: &[u8]) -> Option<Vec<u8>> {
        self.text_meta.alphabet.encode_seq(pattern)
    }
}
