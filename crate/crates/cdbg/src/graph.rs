//! The compressed de Bruijn graph: implicit construction by leftward
//! extension from right-maximal k-mers and stop nodes, explicit
//! materialisation by backward walks over each sequence, and the node/edge
//! counting identities.

use crate::fm_index::{FmIndex, Interval};
use crate::kmer_marking::{self, MarkVectors, MarkingOutput};
use crate::{Error, PanIndex, Result};

/// One node of the implicit graph. `[lb..lb+size-1]` is the SA interval of
/// the node string, `[suffix_lb..suffix_lb+size-1]` the interval of its
/// k-length suffix. Stop nodes carry their separator's SA index `1..=d` in
/// `suffix_lb`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ImplicitNode {
    pub len: usize,
    pub lb: usize,
    pub size: usize,
    pub suffix_lb: usize,
}

/// The implicit compressed de Bruijn graph: ids `1..=right_max` are
/// right-maximal k-mer nodes, the next `left_max` are the split nodes found
/// during extension, the final `d` are stop nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImplicitGraph {
    nodes: Vec<ImplicitNode>,
    right_max: usize,
    left_max: usize,
    d: usize,
    k: usize,
}

impl ImplicitGraph {
    pub fn from_parts(
        nodes: Vec<ImplicitNode>,
        right_max: usize,
        left_max: usize,
        d: usize,
        k: usize,
    ) -> Result<ImplicitGraph> {
        if nodes.len() != right_max + left_max + d {
            return Err(Error::Invariant(format!(
                "node count {} != right_max {right_max} + left_max {left_max} + d {d}",
                nodes.len()
            )));
        }
        Ok(ImplicitGraph {
            nodes,
            right_max,
            left_max,
            d,
            k,
        })
    }

    pub fn node(&self, id: usize) -> &ImplicitNode {
        &self.nodes[id - 1]
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[ImplicitNode] {
        &self.nodes
    }

    pub fn right_max(&self) -> usize {
        self.right_max
    }

    pub fn left_max(&self) -> usize {
        self.left_max
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_stop_node(&self, id: usize) -> bool {
        id > self.right_max + self.left_max
    }

    /// Longest node string length.
    pub fn longest_node_len(&self) -> usize {
        self.nodes.iter().map(|n| n.len).max().unwrap_or(0)
    }
}

/// One node of the explicit graph; `pos_list` ascending, `adj_list` in walk
/// order (the i-th visit of the node continues to `adj_list[i-1]`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitNode {
    pub len: usize,
    pub pos_list: Vec<usize>,
    pub adj_list: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitGraph {
    nodes: Vec<ExplicitNode>,
    /// `start_nodes[j-1]` is the node containing the first k-mer of
    /// sequence `j`.
    start_nodes: Vec<usize>,
}

impl ExplicitGraph {
    pub fn node(&self, id: usize) -> &ExplicitNode {
        &self.nodes[id - 1]
    }

    pub fn nodes(&self) -> &[ExplicitNode] {
        &self.nodes
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn start_nodes(&self) -> &[usize] {
        &self.start_nodes
    }

    pub fn edge_count(&self) -> usize {
        self.nodes.iter().map(|n| n.adj_list.len()).sum()
    }

    pub fn from_parts(nodes: Vec<ExplicitNode>, start_nodes: Vec<usize>) -> ExplicitGraph {
        ExplicitGraph { nodes, start_nodes }
    }
}

/// Construction trace events, used to audit runs against the worked
/// extension/creation sequence of the algorithm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BuildEvent {
    /// A stop node was appended.
    StopNode { id: usize, node: ImplicitNode },
    /// Case 1: the dequeued node grew one character to the left.
    Extend { id: usize, node: ImplicitNode },
    /// Case 2: a new split node was created and enqueued.
    Create { id: usize, node: ImplicitNode },
    /// A candidate interval was not followed.
    Reject {
        interval: (usize, usize),
        reason: RejectReason,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RejectReason {
    /// rank1(B_r, lb) is odd: inside a right-maximal k-mer interval.
    OddParity,
    /// rank parity even but the bit at lb is set: right boundary of such an
    /// interval.
    Boundary,
    /// The extension character is a separator or the sentinel.
    Separator,
}

/// Build the implicit graph from the marking output (consumes it).
pub fn create_compressed_graph(
    k: usize,
    fm: &FmIndex,
    marking: MarkingOutput,
) -> Result<ImplicitGraph> {
    create_graph_inner(k, fm, marking, &mut |_| {})
}

/// As [`create_compressed_graph`], additionally returning the event trace.
pub fn create_compressed_graph_traced(
    k: usize,
    fm: &FmIndex,
    marking: MarkingOutput,
) -> Result<(ImplicitGraph, Vec<BuildEvent>)> {
    let mut events = Vec::new();
    let g = create_graph_inner(k, fm, marking, &mut |e| events.push(e))?;
    Ok((g, events))
}

fn create_graph_inner(
    k: usize,
    fm: &FmIndex,
    marking: MarkingOutput,
    emit: &mut dyn FnMut(BuildEvent),
) -> Result<ImplicitGraph> {
    let MarkingOutput {
        marks,
        initial_nodes,
        mut queue,
    } = marking;
    let d = fm.d();
    let right_max = marks.right_max;
    let left_max = marks.left_max;
    let total = right_max + left_max + d;

    let mut nodes: Vec<Option<ImplicitNode>> = vec![None; total];
    for (idx, node) in initial_nodes.into_iter().enumerate() {
        nodes[idx] = Some(node);
    }

    // Stop nodes: one per separator/sentinel suffix, sitting at SA indices
    // 1..=d. Their B_l bits are clear by construction; a set bit would make
    // the id arithmetic collide.
    for s in 1..=d {
        let id = right_max + left_max + s;
        let node = ImplicitNode {
            len: 1,
            lb: s,
            size: 1,
            suffix_lb: s,
        };
        nodes[id - 1] = Some(node);
        queue.push_back(id);
        emit(BuildEvent::StopNode { id, node });
        if marks.b_l.get(s) {
            return Err(Error::Invariant(format!(
                "B_l bit set at separator index {s}"
            )));
        }
    }

    while let Some(id) = queue.pop_front() {
        loop {
            let mut extendable = false;
            let current = nodes[id - 1].expect("queued node exists");
            let iv = Interval::new(current.lb, current.lb + current.size - 1);
            let list = fm.get_intervals(iv);
            let single = list.len() == 1;
            for (c, sub) in &list {
                let ones = marks.b_r.rank1(sub.lb);
                if ones % 2 != 0 {
                    emit(BuildEvent::Reject {
                        interval: (sub.lb, sub.rb),
                        reason: RejectReason::OddParity,
                    });
                    continue;
                }
                if marks.b_r.get(sub.lb) {
                    emit(BuildEvent::Reject {
                        interval: (sub.lb, sub.rb),
                        reason: RejectReason::Boundary,
                    });
                    continue;
                }
                if *c < 2 {
                    emit(BuildEvent::Reject {
                        interval: (sub.lb, sub.rb),
                        reason: RejectReason::Separator,
                    });
                    continue;
                }
                if single {
                    // Case 1: not left-maximal, grow in place.
                    extendable = true;
                    let node = nodes[id - 1].as_mut().expect("queued node exists");
                    node.len += 1;
                    node.lb = sub.lb;
                    emit(BuildEvent::Extend { id, node: *node });
                } else {
                    // Case 2: split; the new node is the k-mer prefix of the
                    // extension and gets its id from the B_l rank.
                    let new_id = right_max + marks.b_l.rank1(sub.lb - 1) + 1;
                    if new_id <= right_max || new_id > right_max + left_max {
                        return Err(Error::Invariant(format!(
                            "case-2 id {new_id} outside split-node range"
                        )));
                    }
                    let node = ImplicitNode {
                        len: k,
                        lb: sub.lb,
                        size: sub.len(),
                        suffix_lb: sub.lb,
                    };
                    if let Some(existing) = nodes[new_id - 1] {
                        return Err(Error::Invariant(format!(
                            "case-2 id {new_id} created twice ({existing:?} vs {node:?})"
                        )));
                    }
                    nodes[new_id - 1] = Some(node);
                    queue.push_back(new_id);
                    emit(BuildEvent::Create { id: new_id, node });
                }
            }
            if !extendable {
                break;
            }
        }
    }

    let nodes: Vec<ImplicitNode> = nodes
        .into_iter()
        .enumerate()
        .map(|(i, n)| n.ok_or_else(|| Error::Invariant(format!("node id {} never created", i + 1))))
        .collect::<Result<_>>()?;
    ImplicitGraph::from_parts(nodes, right_max, left_max, d, k)
}

/// Materialise position lists, adjacency lists and start nodes by walking
/// each sequence backward from its stop node.
pub fn construct_explicit_graph(
    g: &ImplicitGraph,
    fm: &FmIndex,
    marks: &MarkVectors,
) -> Result<ExplicitGraph> {
    let n = fm.n();
    let d = g.d();
    let k = g.k();
    let total = g.node_count();
    let non_stop = g.right_max() + g.left_max();

    let mut pos_lists: Vec<Vec<usize>> = vec![Vec::new(); total];
    let mut adj_lists: Vec<Vec<usize>> = vec![Vec::new(); total];
    let mut start_nodes = vec![0usize; d];

    let mut i = 1usize;
    // Entering each iteration, `pos` is one past the terminator of the
    // sequence about to be walked: n+1 for the last sequence, later the
    // first position of the previously walked sequence. Subtracting the
    // stop-node length lands on the start of its string.
    let mut pos = n + 1;
    for s in 1..=d {
        if i < 1 || i > d {
            return Err(Error::Invariant(format!(
                "stop-node suffix index {i} outside 1..={d}"
            )));
        }
        let id = non_stop + i;
        let stop = g.node(id);
        pos = pos
            .checked_sub(stop.len)
            .filter(|&p| p >= 1)
            .ok_or_else(|| Error::Invariant("stop node overruns text start".into()))?;
        if !pos_lists[id - 1].is_empty() {
            return Err(Error::Invariant(format!("stop node {id} visited twice")));
        }
        pos_lists[id - 1].push(pos);

        let mut idx = stop.lb;
        let mut cur = id;
        while fm.bwt_code(idx) >= 2 {
            let step = fm.lf(idx);
            let ones = marks.b_r.rank1(step);
            let new_id = if ones.is_multiple_of(2) && !marks.b_r.get(step) {
                g.right_max() + marks.b_l.rank1(step - 1) + 1
            } else {
                ones.div_ceil(2)
            };
            if new_id < 1 || new_id > non_stop {
                return Err(Error::Invariant(format!(
                    "walk reached invalid predecessor id {new_id}"
                )));
            }
            let node = g.node(new_id);
            let new_pos = (pos - 1)
                .checked_sub(node.len - k)
                .filter(|&p| p >= 1)
                .ok_or_else(|| Error::Invariant("walk position underflow".into()))?;
            pos_lists[new_id - 1].push(new_pos);
            adj_lists[new_id - 1].push(cur);
            idx = node.lb + (step - node.suffix_lb);
            cur = new_id;
            pos = new_pos;
        }
        start_nodes[d - s] = cur;
        i = fm.lf(idx);
    }
    if pos != 1 {
        return Err(Error::Invariant(format!(
            "walks ended at position {pos}, expected 1"
        )));
    }

    // Visits were recorded backward; flip into text order.
    let nodes = g
        .nodes()
        .iter()
        .zip(pos_lists.iter_mut().zip(adj_lists.iter_mut()))
        .enumerate()
        .map(|(idx, (node, (pos_list, adj_list)))| {
            if pos_list.is_empty() {
                return Err(Error::Invariant(format!("node {} never visited", idx + 1)));
            }
            pos_list.reverse();
            adj_list.reverse();
            Ok(ExplicitNode {
                len: node.len,
                pos_list: std::mem::take(pos_list),
                adj_list: std::mem::take(adj_list),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ExplicitGraph { nodes, start_nodes })
}

/// Node and edge counts plus the longest node string length.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GraphStats {
    pub n_nodes: usize,
    pub n_edges: usize,
    pub longest_node_len: usize,
}

/// Compute the stats and verify the counting identities: the node count
/// decomposes as `right_max + left_max + d` and the edge count equals the
/// total size of the non-stop-node suffix intervals (the number of text
/// positions whose k-mer ends a non-stop node).
pub fn graph_stats(g: &ImplicitGraph, explicit: &ExplicitGraph) -> Result<GraphStats> {
    let n_nodes = g.node_count();
    if n_nodes != g.right_max() + g.left_max() + g.d() {
        return Err(Error::Invariant("node count identity violated".into()));
    }
    let n_edges = explicit.edge_count();
    let interval_total: usize = (1..=n_nodes)
        .filter(|&id| !g.is_stop_node(id))
        .map(|id| g.node(id).size)
        .sum();
    if n_edges != interval_total {
        return Err(Error::Invariant(format!(
            "edge count {n_edges} != non-stop interval total {interval_total}"
        )));
    }
    Ok(GraphStats {
        n_nodes,
        n_edges,
        longest_node_len: g.longest_node_len(),
    })
}

/// Edge count straight from the implicit graph, without materialising the
/// explicit one.
pub fn implicit_edge_count(g: &ImplicitGraph) -> usize {
    (1..=g.node_count())
        .filter(|&id| !g.is_stop_node(id))
        .map(|id| g.node(id).size)
        .sum()
}

/// Full construction driver: validate `k`, run the marking pass and build
/// the implicit graph. Returns the graph together with the mark vectors,
/// which the search operations keep using.
pub fn build_graph(index: &PanIndex, k: usize) -> Result<(ImplicitGraph, MarkVectors)> {
    kmer_marking::validate_k(k, index.shortest_sequence_len())?;
    let lcp = kmer_marking::truncated_lcp(&index.fm, k);
    let marking = kmer_marking::create_bit_vectors(k, &index.fm, &lcp);
    let marks = marking.marks.clone();
    let g = create_compressed_graph(k, &index.fm, marking)?;
    Ok((g, marks))
}
