//! Materialise the explicit graph and emit it as DOT, GFA1 and TSV, the
//! same output the `cdbg export` subcommand produces from files on disk.
//!
//! ```text
//! cargo run --example export_formats
//! ```

use cdbg::cli::{cmd_export, ExportFormat};
use cdbg::graph::{build_graph, construct_explicit_graph};
use cdbg::io::{write_explicit_graph, write_index};
use cdbg::sequence_store::text_from_sequences;
use cdbg::PanIndex;

fn main() {
    let text = text_from_sequences(&[b"ACTACGTACGTACG"]).unwrap();
    let index = PanIndex::build(&text, 32);
    let (graph, marks) = build_graph(&index, 3).unwrap();
    let explicit = construct_explicit_graph(&graph, &index.fm, &marks).unwrap();

    // Round through the on-disk representation, as the CLI would.
    let dir = std::env::temp_dir().join("cdbg-export-example");
    std::fs::create_dir_all(&dir).unwrap();
    let graph_path = dir.join("example.g.explicit");
    let index_path = dir.join("example.idx");
    std::fs::write(&graph_path, write_explicit_graph(&explicit, &graph)).unwrap();
    std::fs::write(&index_path, write_index(&index)).unwrap();

    let mut stdout = std::io::stdout();
    println!("--- TSV ---");
    cmd_export(&graph_path, ExportFormat::Tsv, None, &mut stdout).unwrap();
    println!("--- DOT (decoded labels) ---");
    cmd_export(
        &graph_path,
        ExportFormat::Dot,
        Some(&index_path),
        &mut stdout,
    )
    .unwrap();
    println!("--- GFA1 ---");
    cmd_export(
        &graph_path,
        ExportFormat::Gfa,
        Some(&index_path),
        &mut stdout,
    )
    .unwrap();
}
