//! Best-first search over 𝔍-moves.
//!
//! Nodes are ordered by (vertex count, edge count, discovery order). Every
//! child except a freshly glued twin is first normalised by greedy
//! s-collapsing, recorded as `I1` deletions. Graphs whose digest was already
//! seen are pruned; this only costs completeness, since verdicts never rely
//! on the pruning. Expansions are restricted to gluing a true twin
//! (`S = N[u]`) and gluing edges whose common neighborhood passes
//! dismantling or s-reduction.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};

use super::{link_dismantling, IMove, MoveKind};
use crate::graph::{Graph, VertexSet};
use crate::reduction::{s_reduce_unchecked, Certifier, Verdict};

pub(crate) enum SearchOutcome {
    Found(Vec<IMove>),
    Exhausted,
    OutOfNodes,
}

struct Node {
    graph: Graph,
    parent: Option<usize>,
    moves: Vec<IMove>,
}

fn normalize(g: Graph) -> (Graph, Vec<IMove>) {
    let red = s_reduce_unchecked(&g);
    let moves = red
        .deletions
        .into_iter()
        .map(|v| IMove::uncertified(MoveKind::DeleteVertex(v)))
        .collect();
    (red.terminal, moves)
}

/// Moves from the root to `idx`, with normalisation deletions certified by
/// the dismantling of their links.
fn path(nodes: &[Node], idx: usize, start: &Graph) -> Vec<IMove> {
    let mut chain = Vec::new();
    let mut at = Some(idx);
    while let Some(i) = at {
        chain.push(i);
        at = nodes[i].parent;
    }
    let mut moves = Vec::new();
    let mut g = start.clone();
    for &i in chain.iter().rev() {
        for m in &nodes[i].moves {
            let certified = match &m.certificate {
                Some(_) => m.clone(),
                None => {
                    let MoveKind::DeleteVertex(v) = m.kind else {
                        unreachable!("only normalisation moves lack certificates")
                    };
                    IMove {
                        kind: m.kind.clone(),
                        certificate: Some(link_dismantling(&g, v).expect("s-dismantlable vertex")),
                    }
                }
            };
            g = m.kind.apply(&g).expect("recorded move applies");
            moves.push(certified);
        }
    }
    moves
}

fn certified(kind: MoveKind, verdict: Verdict) -> IMove {
    IMove {
        kind,
        certificate: Some(verdict),
    }
}

/// Certified moves available at `g`, deletions first.
fn children(c: &mut Certifier, g: &Graph, depth: u32) -> Option<Vec<IMove>> {
    let mut out = Vec::new();
    let nested = depth.saturating_sub(1);
    for v in g.vertices() {
        let around = g.open_neighborhood(v).expect("vertex present");
        if around.is_empty() {
            continue;
        }
        let link = g.induced(around).expect("subset of vertices");
        let verdict = c.certify_at(&link, nested);
        if c.out_of_nodes() {
            return None;
        }
        if verdict.is_yes() {
            out.push(certified(MoveKind::DeleteVertex(v), verdict));
        }
    }
    let edges: Vec<_> = g.edges().collect();
    for (v, w) in edges {
        let common = g.common_neighborhood(v, w).expect("distinct vertices");
        if common.is_empty() {
            continue;
        }
        let sub = g.induced(&common).expect("subset of vertices");
        let verdict = c.certify_at(&sub, nested);
        if c.out_of_nodes() {
            return None;
        }
        if verdict.is_yes() {
            out.push(certified(MoveKind::DeleteEdge(v, w), verdict));
        }
    }
    for u in g.vertices() {
        let closed = g.closed_neighborhood(u).expect("vertex present");
        let sub = g.induced(&closed).expect("subset of vertices");
        if let Some(verdict) = Certifier::quick(&sub) {
            out.push(certified(MoveKind::GlueVertex(closed), verdict));
        }
    }
    let vertices: Vec<_> = g.vertices().collect();
    for (i, &v) in vertices.iter().enumerate() {
        for &w in &vertices[i + 1..] {
            if g.has_edge(v, w) {
                continue;
            }
            let common: VertexSet = g.common_neighborhood(v, w).expect("distinct vertices");
            if common.is_empty() {
                continue;
            }
            let sub = g.induced(&common).expect("subset of vertices");
            if let Some(verdict) = Certifier::quick(&sub) {
                out.push(certified(MoveKind::GlueEdge(v, w), verdict));
            }
        }
    }
    Some(out)
}

pub(crate) fn search(c: &mut Certifier, start: &Graph, depth: u32) -> SearchOutcome {
    let (root, moves) = normalize(start.clone());
    let mut seen = HashSet::from([root.canonical_hash()]);
    let mut heap = BinaryHeap::from([Reverse((root.vertex_count(), root.edge_count(), 0usize))]);
    let mut nodes = vec![Node {
        graph: root,
        parent: None,
        moves,
    }];
    if nodes[0].graph.is_k1() {
        return SearchOutcome::Found(path(&nodes, 0, start));
    }
    while let Some(Reverse((_, _, idx))) = heap.pop() {
        if c.out_of_nodes() {
            return SearchOutcome::OutOfNodes;
        }
        c.tick();
        let g = nodes[idx].graph.clone();
        let Some(options) = children(c, &g, depth) else {
            return SearchOutcome::OutOfNodes;
        };
        for m in options {
            let next = m.kind.apply(&g).expect("certified move applies");
            let (child, mut moves) = if matches!(m.kind, MoveKind::GlueVertex(_)) {
                (next, Vec::new())
            } else {
                normalize(next)
            };
            moves.insert(0, m);
            if child.is_empty() || !seen.insert(child.canonical_hash()) {
                continue;
            }
            let key = (child.vertex_count(), child.edge_count(), nodes.len());
            nodes.push(Node {
                graph: child,
                parent: Some(idx),
                moves,
            });
            if nodes.last().expect("just pushed").graph.is_k1() {
                return SearchOutcome::Found(path(&nodes, nodes.len() - 1, start));
            }
            heap.push(Reverse(key));
        }
    }
    SearchOutcome::Exhausted
}
