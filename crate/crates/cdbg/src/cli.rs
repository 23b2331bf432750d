//! Command implementations behind the `cdbg` binary: build the index, build
//! graphs for a chosen k, search patterns, export graphs.
//!
//! Exit codes: 0 success, 1 generic failure, 2 I/O, 3 invalid parameters,
//! 4 missing dependency between flags.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::graph::{self, ImplicitGraph};
use crate::io as disk;
use crate::kmer_marking::{self, MarkVectors};

use crate::sequence_store::SequenceStore;
use crate::{Error, PanIndex, DEFAULT_SAMPLE_RATE};

/// An error carrying the process exit code.
#[derive(Debug)]
pub struct CliError {
    pub message: String,
    pub code: i32,
}

impl CliError {
    pub fn new(message: impl Into<String>, code: i32) -> CliError {
        CliError {
            message: message.into(),
            code,
        }
    }

    fn usage(message: impl Into<String>) -> CliError {
        CliError::new(message, 3)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        let code = match &e {
            Error::Io(_) => 2,
            Error::InvalidK { .. } => 3,
            _ => 1,
        };
        CliError::new(e.to_string(), code)
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Build {
        input: PathBuf,
        output: PathBuf,
        sample_rate: u32,
    },
    Graph {
        index: PathBuf,
        k: usize,
        output: PathBuf,
        explicit: bool,
    },
    Search {
        index: PathBuf,
        graph: PathBuf,
        pattern: Option<String>,
        patterns_file: Option<PathBuf>,
    },
    Export {
        graph: PathBuf,
        format: ExportFormat,
        index: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Gfa,
    Tsv,
}

pub const USAGE: &str = "\
usage: cdbg <command> [options]

commands:
  build   --input <fasta> --output <index> [--sample-rate <n>]
  graph   --index <index> -k <n> --output <graph> [--explicit]
  search  --index <index> --graph <graph> (--pattern <string> | --patterns <file>)
  export  --graph <explicit-graph> --format <dot|gfa|tsv> [--index <index>]
";

/// Parse a command line (without the program name).
pub fn parse_args(args: &[String]) -> CliResult<Command> {
    let mut it = args.iter();
    let sub = it
        .next()
        .ok_or_else(|| CliError::usage("missing command"))?;
    let mut flags: Vec<(String, Option<String>)> = Vec::new();
    let rest: Vec<&String> = it.collect();
    let mut i = 0;
    while i < rest.len() {
        let flag = rest[i].clone();
        if !flag.starts_with('-') {
            return Err(CliError::usage(format!("unexpected argument '{flag}'")));
        }
        let takes_value = flag != "--explicit";
        if takes_value {
            let value = rest
                .get(i + 1)
                .ok_or_else(|| CliError::usage(format!("flag {flag} needs a value")))?;
            flags.push((flag, Some(value.to_string())));
            i += 2;
        } else {
            flags.push((flag, None));
            i += 1;
        }
    }
    let take = |name: &str| -> Option<String> {
        flags
            .iter()
            .find(|(f, _)| f == name)
            .and_then(|(_, v)| v.clone())
    };
    let has = |name: &str| flags.iter().any(|(f, _)| f == name);
    let require = |name: &str| -> CliResult<String> {
        take(name).ok_or_else(|| CliError::usage(format!("missing required flag {name}")))
    };

    match sub.as_str() {
        "build" => {
            Ok(Command::Build {
                input: require("--input")?.into(),
                output: require("--output")?.into(),
                sample_rate: match take("--sample-rate") {
                    Some(v) => v.parse::<u32>().ok().filter(|&r| r >= 1).ok_or_else(|| {
                        CliError::usage("--sample-rate must be a positive integer")
                    })?,
                    None => DEFAULT_SAMPLE_RATE,
                },
            })
        }
        "graph" => Ok(Command::Graph {
            index: require("--index")?.into(),
            k: require("-k")?
                .parse::<usize>()
                .map_err(|_| CliError::usage("-k must be an integer"))?,
            output: require("--output")?.into(),
            explicit: has("--explicit"),
        }),
        "search" => {
            let pattern = take("--pattern");
            let patterns_file = take("--patterns").map(PathBuf::from);
            if pattern.is_none() && patterns_file.is_none() {
                return Err(CliError::usage("search needs --pattern or --patterns"));
            }
            Ok(Command::Search {
                index: require("--index")?.into(),
                graph: require("--graph")?.into(),
                pattern,
                patterns_file,
            })
        }
        "export" => Ok(Command::Export {
            graph: require("--graph")?.into(),
            format: match require("--format")?.as_str() {
                "dot" => ExportFormat::Dot,
                "gfa" => ExportFormat::Gfa,
                "tsv" => ExportFormat::Tsv,
                other => {
                    return Err(CliError::usage(format!(
                        "unknown format '{other}' (expected dot, gfa or tsv)"
                    )))
                }
            },
            index: take("--index").map(PathBuf::from),
        }),
        other => Err(CliError::usage(format!("unknown command '{other}'"))),
    }
}

pub fn run(cmd: Command, out: &mut dyn Write) -> CliResult<()> {
    match cmd {
        Command::Build {
            input,
            output,
            sample_rate,
        } => cmd_build(&input, &output, sample_rate, out),
        Command::Graph {
            index,
            k,
            output,
            explicit,
        } => cmd_graph(&index, k, &output, explicit, out),
        Command::Search {
            index,
            graph,
            pattern,
            patterns_file,
        } => cmd_search(&index, &graph, pattern, patterns_file, out),
        Command::Export {
            graph,
            format,
            index,
        } => cmd_export(&graph, format, index.as_deref(), out),
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> CliResult<()> {
    fs::write(path, bytes)
        .map_err(|e| CliError::new(format!("cannot write {}: {e}", path.display()), 2))
}

fn read_file(path: &Path) -> CliResult<Vec<u8>> {
    fs::read(path).map_err(|e| CliError::new(format!("cannot read {}: {e}", path.display()), 2))
}

pub fn cmd_build(
    input: &Path,
    output: &Path,
    sample_rate: u32,
    out: &mut dyn Write,
) -> CliResult<()> {
    let data = read_file(input)?;
    let store = SequenceStore::from_fasta(&data[..])?;
    let text = store.concatenate();
    let index = PanIndex::build(&text, sample_rate);
    write_file(output, &disk::write_index(&index))?;
    writeln!(out, "n={} d={} sigma={}", text.n(), text.d(), text.sigma()).map_err(Error::from)?;
    Ok(())
}

pub fn cmd_graph(
    index_path: &Path,
    k: usize,
    output: &Path,
    explicit: bool,
    out: &mut dyn Write,
) -> CliResult<()> {
    let index = disk::read_index(&read_file(index_path)?)?;
    let (g, marks) = graph::build_graph(&index, k)?;
    write_file(output, &disk::write_implicit_graph(&g))?;
    if explicit {
        let ex = graph::construct_explicit_graph(&g, &index.fm, &marks)?;
        let stats = graph::graph_stats(&g, &ex)?;
        let mut path = output.as_os_str().to_owned();
        path.push(".explicit");
        write_file(Path::new(&path), &disk::write_explicit_graph(&ex, &g))?;
        writeln!(
            out,
            "nodes={} edges={} longest={}",
            stats.n_nodes, stats.n_edges, stats.longest_node_len
        )
        .map_err(Error::from)?;
    } else {
        writeln!(
            out,
            "nodes={} edges={} longest={}",
            g.node_count(),
            graph::implicit_edge_count(&g),
            g.longest_node_len()
        )
        .map_err(Error::from)?;
    }
    Ok(())
}

/// Recompute the mark vectors for a loaded graph; the graph file stores only
/// the nodes, and the marking pass is deterministic given the index and k.
fn marks_for(index: &PanIndex, k: usize) -> MarkVectors {
    let lcp = kmer_marking::truncated_lcp(&index.fm, k);
    kmer_marking::create_bit_vectors(k, &index.fm, &lcp).marks
}

/// A graph file only makes sense with the index it was built from; catch
/// obvious mix-ups before answering queries from garbage.
fn check_graph_matches_index(g: &ImplicitGraph, index: &PanIndex) -> CliResult<()> {
    let n = index.n();
    let consistent = g.d() == index.d()
        && kmer_marking::validate_k(g.k(), index.shortest_sequence_len()).is_ok()
        && g.nodes().iter().all(|node| {
            node.lb >= 1 && node.lb + node.size - 1 <= n && node.len <= n && node.suffix_lb <= n
        });
    if !consistent {
        return Err(Error::Format(
            "graph file does not match this index (built from different input?)".into(),
        )
        .into());
    }
    Ok(())
}

pub fn cmd_search(
    index_path: &Path,
    graph_path: &Path,
    pattern: Option<String>,
    patterns_file: Option<PathBuf>,
    out: &mut dyn Write,
) -> CliResult<()> {
    let index = disk::read_index(&read_file(index_path)?)?;
    let g = disk::read_implicit_graph(&read_file(graph_path)?)?;
    check_graph_matches_index(&g, &index)?;
    let marks = marks_for(&index, g.k());

    let mut patterns: Vec<String> = Vec::new();
    if let Some(p) = pattern {
        patterns.push(p);
    }
    if let Some(file) = patterns_file {
        let data = read_file(&file)?;
        let content = String::from_utf8_lossy(&data);
        patterns.extend(
            content
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('>'))
                .map(String::from),
        );
    }

    for (idx, pattern) in patterns.iter().enumerate() {
        let line = search_line(idx + 1, pattern, &index, &g, &marks);
        writeln!(out, "{line}").map_err(Error::from)?;
    }
    Ok(())
}

fn search_line(
    id: usize,
    pattern: &str,
    index: &PanIndex,
    g: &ImplicitGraph,
    marks: &MarkVectors,
) -> String {
    match index.find_nodes(pattern.as_bytes(), g, marks) {
        Err(e) => format!("{id}\terror={e}"),
        Ok(path) if !path.is_found() => format!("{id}\tfound=false\tpath=-\twidth=0\tdocs=-"),
        Ok(path) => {
            let ids: Vec<String> = path.node_ids.iter().map(|i| i.to_string()).collect();
            let hits = index.doc_hits(path.match_interval);
            let docs: Vec<String> = hits
                .entries
                .iter()
                .map(|(j, c)| format!("{j}:{c}"))
                .collect();
            format!(
                "{id}\tfound=true\tpath={}\twidth={}\tdocs={}",
                ids.join(","),
                path.match_interval.len(),
                docs.join(",")
            )
        }
    }
}

pub fn cmd_export(
    graph_path: &Path,
    format: ExportFormat,
    index_path: Option<&Path>,
    out: &mut dyn Write,
) -> CliResult<()> {
    let data = read_file(graph_path)?;
    let (header, ex) = disk::read_explicit_graph(&data)?;
    let decoded: Option<Vec<String>> = match index_path {
        Some(p) => {
            let index = disk::read_index(&read_file(p)?)?;
            let codes = index.fm.reconstruct_text();
            Some(
                ex.nodes()
                    .iter()
                    .map(|n| {
                        let start = n.pos_list[0] - 1;
                        codes[start..start + n.len]
                            .iter()
                            .map(|&c| index.text_meta.alphabet.decode(c) as char)
                            .collect()
                    })
                    .collect(),
            )
        }
        None => None,
    };

    let mut text = String::new();
    match format {
        ExportFormat::Tsv => {
            text.push_str("id\tlen\tposList\tadjList\n");
            for (i, n) in ex.nodes().iter().enumerate() {
                let pos: Vec<String> = n.pos_list.iter().map(|p| p.to_string()).collect();
                let adj: Vec<String> = n.adj_list.iter().map(|a| a.to_string()).collect();
                text.push_str(&format!(
                    "{}\t{}\t{}\t{}\n",
                    i + 1,
                    n.len,
                    if pos.is_empty() {
                        "-".into()
                    } else {
                        pos.join(",")
                    },
                    if adj.is_empty() {
                        "-".into()
                    } else {
                        adj.join(",")
                    },
                ));
            }
        }
        ExportFormat::Dot => {
            text.push_str("digraph cdbg {\n");
            for (i, n) in ex.nodes().iter().enumerate() {
                let label = match &decoded {
                    Some(strings) => strings[i].clone(),
                    None => format!("{}:{}", i + 1, n.len),
                };
                text.push_str(&format!("  n{} [label=\"{label}\"];\n", i + 1));
            }
            for (i, n) in ex.nodes().iter().enumerate() {
                for &t in &n.adj_list {
                    text.push_str(&format!("  n{} -> n{t};\n", i + 1));
                }
            }
            text.push_str("}\n");
        }
        ExportFormat::Gfa => {
            let strings = decoded.ok_or_else(|| {
                CliError::new("gfa export needs --index to decode node strings", 4)
            })?;
            text.push_str("H\tVN:Z:1.0\n");
            for (i, s) in strings.iter().enumerate() {
                text.push_str(&format!("S\t{}\t{s}\n", i + 1));
            }
            let overlap = header.k - 1;
            for (i, n) in ex.nodes().iter().enumerate() {
                for &t in &n.adj_list {
                    text.push_str(&format!("L\t{}\t+\t{t}\t+\t{overlap}M\n", i + 1));
                }
            }
        }
    }
    out.write_all(text.as_bytes()).map_err(Error::from)?;
    Ok(())
}
