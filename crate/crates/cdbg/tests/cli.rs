//! End-to-end tests of the `cdbg` binary: build -> graph -> search ->
//! export, plus the documented exit codes.

use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn cdbg(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cdbg"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn setup_running_example(dir: &Path) {
    std::fs::write(dir.join("genome.fasta"), ">chr\nACTACGTACGTACG\n").unwrap();
    let out = cdbg(
        &["build", "--input", "genome.fasta", "--output", "pan.idx"],
        dir,
    );
    assert!(out.status.success(), "{out:?}");
    assert_eq!(stdout(&out), "n=15 d=1 sigma=6\n");
    let out = cdbg(
        &[
            "graph",
            "--index",
            "pan.idx",
            "-k",
            "3",
            "--output",
            "pan.g",
            "--explicit",
        ],
        dir,
    );
    assert!(out.status.success(), "{out:?}");
    assert_eq!(stdout(&out), "nodes=4 edges=6 longest=4\n");
}

#[test]
fn build_graph_search_pipeline() {
    let tmp = TempDir::new().unwrap();
    setup_running_example(tmp.path());

    // the index file on disk holds the expected BWT
    let index = cdbg::io::read_index(&std::fs::read(tmp.path().join("pan.idx")).unwrap()).unwrap();
    let bwt_display: Vec<u8> = index
        .fm
        .decode_bwt()
        .iter()
        .map(|&c| index.text_meta.alphabet.decode(c))
        .collect();
    assert_eq!(bwt_display, b"GTTT$AAAACCCGGC");

    let out = cdbg(
        &[
            "search",
            "--index",
            "pan.idx",
            "--graph",
            "pan.g",
            "--pattern",
            "ACTACG",
        ],
        tmp.path(),
    );
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1\tfound=true\tpath=2,1\twidth=1\tdocs=1:1\n");

    let out = cdbg(
        &[
            "search",
            "--index",
            "pan.idx",
            "--graph",
            "pan.g",
            "--pattern",
            "ACGG",
        ],
        tmp.path(),
    );
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1\tfound=false\tpath=-\twidth=0\tdocs=-\n");

    // pattern file with a too-short pattern: error record, process succeeds
    std::fs::write(tmp.path().join("patterns.txt"), "TACGTACG\nAC\nTACG\n").unwrap();
    let out = cdbg(
        &[
            "search",
            "--index",
            "pan.idx",
            "--graph",
            "pan.g",
            "--patterns",
            "patterns.txt",
        ],
        tmp.path(),
    );
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[0], "1\tfound=true\tpath=1,3,1\twidth=2\tdocs=1:2");
    assert!(lines[1].starts_with("2\terror="), "{}", lines[1]);
    assert!(lines[1].contains("shorter than k"));
    assert_eq!(lines[2], "3\tfound=true\tpath=1\twidth=3\tdocs=1:3");
}

#[test]
fn export_formats() {
    let tmp = TempDir::new().unwrap();
    setup_running_example(tmp.path());

    // TSV mirrors the explicit table: a header plus 4 rows
    let out = cdbg(
        &["export", "--graph", "pan.g.explicit", "--format", "tsv"],
        tmp.path(),
    );
    assert!(out.status.success());
    let tsv = stdout(&out);
    let lines: Vec<&str> = tsv.lines().collect();
    assert_eq!(lines[0], "id\tlen\tposList\tadjList");
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[1], "1\t4\t3,7,11\t3,3,4");
    assert_eq!(lines[2], "2\t4\t1\t1");
    assert_eq!(lines[3], "3\t4\t5,9\t1,1");
    assert_eq!(lines[4], "4\t3\t13\t-");

    // DOT: 4 vertices, 6 edge lines
    let out = cdbg(
        &["export", "--graph", "pan.g.explicit", "--format", "dot"],
        tmp.path(),
    );
    assert!(out.status.success());
    let dot = stdout(&out);
    assert_eq!(dot.matches("label=").count(), 4);
    assert_eq!(dot.matches(" -> ").count(), 6);
    assert!(dot.contains("n2 [label=\"2:4\"]"));

    // DOT with --index decodes node strings
    let out = cdbg(
        &[
            "export",
            "--graph",
            "pan.g.explicit",
            "--format",
            "dot",
            "--index",
            "pan.idx",
        ],
        tmp.path(),
    );
    assert!(out.status.success());
    let dot = stdout(&out);
    assert!(dot.contains("label=\"TACG\""));
    assert!(dot.contains("label=\"CG$\""));

    // GFA needs the index; with it, segments and k-1 overlaps appear
    let out = cdbg(
        &[
            "export",
            "--graph",
            "pan.g.explicit",
            "--format",
            "gfa",
            "--index",
            "pan.idx",
        ],
        tmp.path(),
    );
    assert!(out.status.success());
    let gfa = stdout(&out);
    assert!(gfa.starts_with("H\tVN:Z:1.0\n"));
    assert_eq!(gfa.matches("\nS\t").count() + 1, 5); // 4 S-lines, one after H
    assert!(gfa.contains("S\t1\tTACG"));
    assert_eq!(gfa.matches("2M\n").count(), 6);
}

#[test]
fn export_single_node_graph() {
    let tmp = TempDir::new().unwrap();
    // no repeated 2-mer: the whole sequence collapses into one node
    std::fs::write(tmp.path().join("one.fasta"), ">s\nACGTG\n").unwrap();
    let out = cdbg(
        &["build", "--input", "one.fasta", "--output", "one.idx"],
        tmp.path(),
    );
    assert!(out.status.success());
    let out = cdbg(
        &[
            "graph",
            "--index",
            "one.idx",
            "-k",
            "2",
            "--output",
            "one.g",
            "--explicit",
        ],
        tmp.path(),
    );
    assert!(out.status.success());
    assert_eq!(stdout(&out), "nodes=1 edges=0 longest=6\n");
    let out = cdbg(
        &["export", "--graph", "one.g.explicit", "--format", "dot"],
        tmp.path(),
    );
    assert!(out.status.success());
    let dot = stdout(&out);
    assert_eq!(dot.matches("label=").count(), 1);
    assert_eq!(dot.matches(" -> ").count(), 0);
}

#[test]
fn exit_codes() {
    let tmp = TempDir::new().unwrap();
    setup_running_example(tmp.path());

    // 2: I/O failure (unwritable output path)
    let out = cdbg(
        &[
            "build",
            "--input",
            "genome.fasta",
            "--output",
            "no/such/dir/pan.idx",
        ],
        tmp.path(),
    );
    assert_eq!(out.status.code(), Some(2), "{out:?}");

    // 3: invalid parameters
    let out = cdbg(
        &["graph", "--index", "pan.idx", "-k", "1", "--output", "g"],
        tmp.path(),
    );
    assert_eq!(out.status.code(), Some(3), "{out:?}");
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("k must be >= 2"), "{err}");

    let out = cdbg(&["flarp"], tmp.path());
    assert_eq!(out.status.code(), Some(3));

    // 4: --format gfa without --index
    let out = cdbg(
        &["export", "--graph", "pan.g.explicit", "--format", "gfa"],
        tmp.path(),
    );
    assert_eq!(out.status.code(), Some(4), "{out:?}");

    // 1: generic (wrong file kind fed to export)
    let out = cdbg(
        &["export", "--graph", "pan.g", "--format", "tsv"],
        tmp.path(),
    );
    assert_eq!(out.status.code(), Some(1), "{out:?}");

    // 2: missing input file
    let out = cdbg(
        &["build", "--input", "nope.fasta", "--output", "x.idx"],
        tmp.path(),
    );
    assert_eq!(out.status.code(), Some(2), "{out:?}");

    // 1: ingestion error (empty record body)
    std::fs::write(tmp.path().join("bad.fasta"), ">a\n>b\nACGT\n").unwrap();
    let out = cdbg(
        &["build", "--input", "bad.fasta", "--output", "x.idx"],
        tmp.path(),
    );
    assert_eq!(out.status.code(), Some(1), "{out:?}");
    assert!(String::from_utf8_lossy(&out.stderr).contains("'a'"));
}

#[test]
fn search_rejects_mismatched_index_and_graph() {
    let tmp = TempDir::new().unwrap();
    setup_running_example(tmp.path());
    // an index over a different input cannot serve this graph
    std::fs::write(tmp.path().join("other.fasta"), ">x\nTTG\n").unwrap();
    let out = cdbg(
        &["build", "--input", "other.fasta", "--output", "other.idx"],
        tmp.path(),
    );
    assert!(out.status.success());
    let out = cdbg(
        &[
            "search",
            "--index",
            "other.idx",
            "--graph",
            "pan.g",
            "--pattern",
            "ACTACG",
        ],
        tmp.path(),
    );
    assert_eq!(out.status.code(), Some(1), "{out:?}");
    assert!(String::from_utf8_lossy(&out.stderr).contains("does not match"));
}

#[test]
fn graph_files_are_deterministic() {
    let tmp = TempDir::new().unwrap();
    std::fs::write(
        tmp.path().join("multi.fasta"),
        ">one\nACGTACGTTG\n>two\nTTACGTACA\n",
    )
    .unwrap();
    let run = |out_idx: &str, out_g: &str| {
        let out = cdbg(
            &["build", "--input", "multi.fasta", "--output", out_idx],
            tmp.path(),
        );
        assert!(out.status.success());
        let out = cdbg(
            &[
                "graph",
                "--index",
                out_idx,
                "-k",
                "4",
                "--output",
                out_g,
                "--explicit",
            ],
            tmp.path(),
        );
        assert!(out.status.success());
    };
    run("a.idx", "a.g");
    run("b.idx", "b.g");
    for (a, b) in [
        ("a.idx", "b.idx"),
        ("a.g", "b.g"),
        ("a.g.explicit", "b.g.explicit"),
    ] {
        let fa = std::fs::read(tmp.path().join(a)).unwrap();
        let fb = std::fs::read(tmp.path().join(b)).unwrap();
        assert_eq!(fa, fb, "{a} vs {b} differ");
    }
}

#[test]
fn search_on_multi_sequence_input() {
    let tmp = TempDir::new().unwrap();
    std::fs::write(tmp.path().join("pan.fasta"), ">a\nACGTACC\n>b\nTACGTAA\n").unwrap();
    let out = cdbg(
        &["build", "--input", "pan.fasta", "--output", "pan.idx"],
        tmp.path(),
    );
    assert!(out.status.success());
    assert_eq!(stdout(&out), "n=16 d=2 sigma=6\n");
    let out = cdbg(
        &[
            "graph", "--index", "pan.idx", "-k", "3", "--output", "pan.g",
        ],
        tmp.path(),
    );
    assert!(out.status.success());
    let out = cdbg(
        &[
            "search",
            "--index",
            "pan.idx",
            "--graph",
            "pan.g",
            "--pattern",
            "ACGTA",
        ],
        tmp.path(),
    );
    assert!(out.status.success(), "{out:?}");
    let line = stdout(&out);
    // ACGTA occurs once in each sequence
    assert!(line.contains("found=true"), "{line}");
    assert!(line.contains("docs=1:1,2:1"), "{line}");
}
