//! Build one index for a small pan-genome and derive compressed de Bruijn
//! graphs for several k-mer lengths from it.
//!
//! ```text
//! cargo run --example build_and_stats
//! ```

use cdbg::graph::{build_graph, construct_explicit_graph, graph_stats};
use cdbg::sequence_store::SequenceStore;
use cdbg::PanIndex;

fn main() {
    let fasta =
        b">strain_a\nACTACGTACGTACG\n>strain_b\nACTACGAACGTACG\n>strain_c\nACTACGTACGAACG\n";
    let store = SequenceStore::from_fasta(&fasta[..]).unwrap();
    let text = store.concatenate();
    println!(
        "pan-genome: {} sequences, {} characters, alphabet size {}",
        text.d(),
        text.n(),
        text.sigma()
    );

    // The index is independent of k; build it once.
    let index = PanIndex::build(&text, 32);

    for k in [2, 3, 4, 6] {
        let (graph, marks) = build_graph(&index, k).unwrap();
        let explicit = construct_explicit_graph(&graph, &index.fm, &marks).unwrap();
        let stats = graph_stats(&graph, &explicit).unwrap();
        println!(
            "k={k}: {} nodes ({} right-maximal, {} split, {} stop), {} edges, longest node string {}",
            stats.n_nodes,
            graph.right_max(),
            graph.left_max(),
            graph.d(),
            stats.n_edges,
            stats.longest_node_len,
        );
    }
}
