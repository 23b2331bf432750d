//! Walk each input sequence through the explicit graph, showing how
//! adjacency lists encode the walks: the i-th visit of a node continues to
//! the i-th entry of its adjacency list.
//!
//! ```text
//! cargo run --example traverse_graph
//! ```

use cdbg::graph::{build_graph, construct_explicit_graph};
use cdbg::sequence_store::text_from_sequences;
use cdbg::PanIndex;

fn main() {
    let text = text_from_sequences(&[b"ACGTACGTTG", b"TTACGTACA"]).unwrap();
    let index = PanIndex::build(&text, 32);
    let k = 3;
    let (graph, marks) = build_graph(&index, k).unwrap();
    let explicit = construct_explicit_graph(&graph, &index.fm, &marks).unwrap();

    let codes = index.fm.reconstruct_text();
    let node_string = |id: usize| -> String {
        let node = explicit.node(id);
        let p = node.pos_list[0] - 1;
        codes[p..p + node.len]
            .iter()
            .map(|&c| index.text_meta.alphabet.decode(c) as char)
            .collect()
    };

    for id in 1..=explicit.node_count() {
        let node = explicit.node(id);
        println!(
            "node {id}: {} at positions {:?}, successors {:?}",
            node_string(id),
            node.pos_list,
            node.adj_list
        );
    }

    // Visit counters are global across the walks of all sequences.
    let mut visits = vec![0usize; explicit.node_count() + 1];
    for (j, &start) in explicit.start_nodes().iter().enumerate() {
        let mut id = start;
        let mut walk = vec![id];
        let mut spelled = node_string(id);
        loop {
            visits[id] += 1;
            if graph.is_stop_node(id) {
                break;
            }
            let next = explicit.node(id).adj_list[visits[id] - 1];
            spelled.push_str(&node_string(next)[k - 1..]);
            walk.push(next);
            id = next;
        }
        println!("sequence {}: walk {:?} spells {}", j + 1, walk, spelled);
    }
}
