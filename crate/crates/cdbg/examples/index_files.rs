//! The on-disk workflow without the CLI: write the index and graph files,
//! load them back, and run a search against the loaded structures.
//!
//! The index file is independent of k; graph files are cheap and per-k.
//!
//! ```text
//! cargo run --example index_files
//! ```

use cdbg::graph::build_graph;
use cdbg::io::{file_kind, read_implicit_graph, read_index, write_implicit_graph, write_index};
use cdbg::kmer_marking::{create_bit_vectors, truncated_lcp};
use cdbg::sequence_store::text_from_sequences;
use cdbg::PanIndex;

fn main() {
    let dir = std::env::temp_dir().join("cdbg-files-example");
    std::fs::create_dir_all(&dir).unwrap();
    let index_path = dir.join("pan.idx");
    let graph_path = dir.join("pan.k4.g");

    // Build and persist.
    {
        let text = text_from_sequences(&[b"ACGTACGTACGA", b"ACGTTCGTACGA"]).unwrap();
        let index = PanIndex::build(&text, 16);
        std::fs::write(&index_path, write_index(&index)).unwrap();
        let (graph, _) = build_graph(&index, 4).unwrap();
        std::fs::write(&graph_path, write_implicit_graph(&graph)).unwrap();
        println!(
            "wrote {} ({} bytes) and {} ({} bytes)",
            index_path.display(),
            std::fs::metadata(&index_path).unwrap().len(),
            graph_path.display(),
            std::fs::metadata(&graph_path).unwrap().len(),
        );
    }

    // Load and query. The mark vectors are not stored; they are recomputed
    // deterministically from the index for the graph's k.
    let index_bytes = std::fs::read(&index_path).unwrap();
    let graph_bytes = std::fs::read(&graph_path).unwrap();
    println!(
        "kinds: {:?} / {:?}",
        file_kind(&index_bytes).unwrap(),
        file_kind(&graph_bytes).unwrap()
    );
    let index = read_index(&index_bytes).unwrap();
    let graph = read_implicit_graph(&graph_bytes).unwrap();
    let lcp = truncated_lcp(&index.fm, graph.k());
    let marks = create_bit_vectors(graph.k(), &index.fm, &lcp).marks;

    for pattern in ["CGTACGA", "ACGTTC", "GGGG"] {
        let path = index
            .find_nodes(pattern.as_bytes(), &graph, &marks)
            .unwrap();
        if path.is_found() {
            println!(
                "{pattern}: path {:?}, {} occurrence(s)",
                path.node_ids,
                path.match_interval.len()
            );
        } else {
            println!("{pattern}: absent");
        }
    }
}
