//! Dismantling, s-reduction and the layered contractibility certifier.
//!
//! A vertex `v` is dominated by `w ≠ v` when `N[v] ⊆ N[w]` (non-strict, so
//! true twins dominate each other). A vertex is s-dismantlable when its open
//! neighborhood induces a dismantlable graph.

mod certifier;
mod verdict;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError, Vertex};

pub use certifier::{certify_contractible, Certifier};
pub(crate) use certifier::{dismantling_certificate, homology_refutation};
pub use verdict::{Budget, Certificate, Diagnostics, Refutation, Verdict};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ReductionError {
    #[error("the empty graph has no contractibility status")]
    EmptyGraph,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Greedy dismantling record: `(removed, dominator)` pairs and the core left
/// when nothing is dominated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DismantlingTrace {
    pub steps: Vec<(Vertex, Vertex)>,
    pub core: Graph,
}

impl DismantlingTrace {
    pub fn reached_k1(&self) -> bool {
        self.core.is_k1()
    }
}

/// Greedy s-collapse record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SReduction {
    pub deletions: Vec<Vertex>,
    pub terminal: Graph,
}

impl SReduction {
    pub fn reached_k1(&self) -> bool {
        self.terminal.is_k1()
    }
}

/// Whether `N[v] ⊆ N[w]` for distinct `v`, `w` (which forces adjacency).
pub fn dominates(g: &Graph, w: Vertex, v: Vertex) -> bool {
    if v == w || !g.has_edge(v, w) {
        return false;
    }
    let nv = g.neighbors(v);
    let nw = g.neighbors(w);
    nv.iter().all(|x| x == w || nw.contains(x))
}

/// Lowest dominated vertex and its lowest dominator.
fn first_dominated(g: &Graph) -> Option<(Vertex, Vertex)> {
    g.vertices()
        .find_map(|v| g.neighbors(v).iter().find(|&w| dominates(g, w, v)).map(|w| (v, w)))
}

/// All `(v, w)` with `N[v] ⊆ N[w]`, `v ≠ w`, sorted.
pub fn dominated_vertices(g: &Graph) -> Vec<(Vertex, Vertex)> {
    g.vertices()
        .flat_map(|v| g.neighbors(v).iter().filter(move |&w| dominates(g, w, v)).map(move |w| (v, w)))
        .collect()
}

/// Removes the lowest-id dominated vertex until none is left.
pub fn dismantle(g: &Graph) -> Result<DismantlingTrace, ReductionError> {
    if g.is_empty() {
        return Err(ReductionError::EmptyGraph);
    }
    Ok(dismantle_unchecked(g))
}

pub(crate) fn dismantle_unchecked(g: &Graph) -> DismantlingTrace {
    let mut core = g.clone();
    let mut steps = Vec::new();
    while let Some((v, w)) = first_dominated(&core) {
        core = core.without_vertex(v);
        steps.push((v, w));
    }
    DismantlingTrace { steps, core }
}

/// Whether `G[N(v)]` is nonempty and dismantlable.
pub fn is_s_dismantlable(g: &Graph, v: Vertex) -> Result<bool, GraphError> {
    let around = g.open_neighborhood(v)?;
    if around.is_empty() {
        return Ok(false);
    }
    let link = g.induced(around)?;
    Ok(dismantle_unchecked(&link).reached_k1())
}

/// Deletes the lowest-id s-dismantlable vertex until none is left.
pub fn s_reduce(g: &Graph) -> Result<SReduction, ReductionError> {
    if g.is_empty() {
        return Err(ReductionError::EmptyGraph);
    }
    Ok(s_reduce_unchecked(g))
}

pub(crate) fn s_reduce_unchecked(g: &Graph) -> SReduction {
    let mut terminal = g.clone();
    let mut deletions = Vec::new();
    loop {
        let next = terminal
            .vertices()
            .find(|&v| is_s_dismantlable(&terminal, v).expect("vertex present"));
        let Some(v) = next else { break };
        terminal = terminal.without_vertex(v);
        deletions.push(v);
    }
    SReduction { deletions, terminal }
}
