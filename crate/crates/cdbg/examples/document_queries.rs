//! Which sequences does a pattern (or a graph node) occur in, and how
//! often? Answered by interval splitting on the wavelet tree of the
//! document array.
//!
//! ```text
//! cargo run --example document_queries
//! ```

use cdbg::graph::build_graph;
use cdbg::sequence_store::SequenceStore;
use cdbg::PanIndex;

fn main() {
    let fasta = b">alpha\nTTGACGATTACCA\n>beta\nGATTACAGATTACA\n>gamma\nCCATTGACCA\n";
    let store = SequenceStore::from_fasta(&fasta[..]).unwrap();
    let names: Vec<String> = store.sequences().iter().map(|(n, _)| n.clone()).collect();
    let text = store.concatenate();
    let index = PanIndex::build(&text, 32);
    let (graph, marks) = build_graph(&index, 3).unwrap();

    for pattern in ["GATTACA", "TTGAC", "ACCA", "TTT"] {
        match index.encode_pattern(pattern.as_bytes()) {
            Some(codes) => {
                let iv = index.fm.search(&codes);
                if iv.is_empty() {
                    println!("{pattern}: absent");
                    continue;
                }
                let hits = index.doc_hits(iv);
                let detail: Vec<String> = hits
                    .entries
                    .iter()
                    .map(|&(j, count)| format!("{} x{}", names[j - 1], count))
                    .collect();
                println!(
                    "{pattern}: {} occurrence(s) across {} sequence(s): {}",
                    hits.total(),
                    hits.entries.len(),
                    detail.join(", ")
                );
            }
            None => println!("{pattern}: contains characters the index has never seen"),
        }
    }

    // The same question for a whole graph node: use its suffix array
    // interval instead of a search result.
    let path = index.find_nodes(b"GATTACA", &graph, &marks).unwrap();
    let id = path.node_ids[0];
    let node = graph.node(id);
    let iv = cdbg::fm_index::Interval::new(node.lb, node.lb + node.size - 1);
    let hits = index.doc_hits(iv);
    println!(
        "node {id} (len {}) occurs in sequences {:?}",
        node.len,
        hits.entries
            .iter()
            .map(|&(j, c)| format!("{} x{c}", names[j - 1]))
            .collect::<Vec<_>>()
    );
}
