//! Search patterns in the graph: the answer is the path of node ids whose
//! strings spell the pattern, obtained from the implicit graph and the
//! FM-index alone.
//!
//! ```text
//! cargo run --example pattern_search
//! ```

use cdbg::graph::build_graph;
use cdbg::query::node_occurrences;
use cdbg::sequence_store::text_from_sequences;
use cdbg::PanIndex;

fn main() {
    let text = text_from_sequences(&[b"ACTACGTACGTACG"]).unwrap();
    let index = PanIndex::build(&text, 32);
    let k = 3;
    let (graph, marks) = build_graph(&index, k).unwrap();

    // Decode a node's string through the suffix array samples.
    let node_string = |id: usize| -> String {
        let node = graph.node(id);
        let pos = node_occurrences(&graph, &index.fm, None, id).unwrap()[0];
        let codes = index.fm.reconstruct_text();
        codes[pos - 1..pos - 1 + node.len]
            .iter()
            .map(|&c| index.text_meta.alphabet.decode(c) as char)
            .collect()
    };

    for pattern in ["ACTACG", "TACGTACG", "CGTACGT", "ACGG", "TTTT"] {
        let path = index
            .find_nodes(pattern.as_bytes(), &graph, &marks)
            .unwrap();
        if !path.is_found() {
            println!("{pattern}: not in the pan-genome");
            continue;
        }
        let names: Vec<String> = path.node_ids.iter().map(|&id| node_string(id)).collect();
        println!(
            "{pattern}: nodes {:?} spelling {} (starts {} chars into node {}, {} occurrence(s))",
            path.node_ids,
            names.join(" -> "),
            path.offset,
            path.node_ids[0],
            path.match_interval.len(),
        );
    }
}
